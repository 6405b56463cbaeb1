//! Model parameters: defaults, loading, validation, and serialization.
//!
//! Every parameter is SI with no unit suffixes. The external document is a
//! single flat JSON object; keys are the long snake_case names below, and
//! each also accepts the usual symbol as an alias (`"R"`, `"l_c"`, `"N_m"`,
//! ...). Absent keys take the defaults listed per field. Derived quantities
//! (`K_D`, `A_c`, `A_e`, `C_ox`, `w_R_eff`) are recomputed from their source
//! fields on every load; the overridable ones (`A_e`, `C_ox`, `w_R_eff`) can
//! be pinned explicitly in the document.

use serde::{Deserialize, Serialize};

use crate::consts::EPS_0;
use crate::error::{Error, Result};

/// Nanowire array geometry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviceGeometry {
    /// Nanowire radius R [m]. Default: 25 nm
    pub nanowire_radius: f64,
    /// Nanowire (beam) length L [m]. Default: 4 µm
    pub nanowire_length: f64,
    /// Center-to-center inter-wire spacing g [m]. Default: 100 nm
    pub inter_wire_spacing: f64,
    /// Number of nanowires in the array. Default: 10
    pub array_count: u32,
    /// Initial air gap y0 [m]. Default: 100 nm
    pub initial_gap: f64,
    /// Gate dielectric thickness y_d [m]. Default: 5 nm
    pub dielectric_thickness: f64,
    /// Beam thickness H [m]. Default: 260 nm
    pub beam_thickness: f64,
    /// Stiffness geometric factor α (fixed–fixed beam, midpoint load). Default: 192
    pub geometric_factor: f64,
    /// Effective electrode area A_e [m²]. Default: N_array · 2R · L
    /// (projected nanowire area); overridable.
    pub effective_electrode_area: f64,
}

/// Substrate and dielectric properties.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialElectrical {
    /// Young's modulus E of the beam material [Pa]. Default: 4 GPa
    pub youngs_modulus: f64,
    /// Substrate acceptor doping N_A [m⁻³]. Default: 1e22 (10^16 cm⁻³)
    pub substrate_doping: f64,
    /// Relative permittivity of the substrate ε_s. Default: 11.7
    pub substrate_rel_permittivity: f64,
    /// Relative permittivity of the gate dielectric ε_d. Default: 3.9
    pub dielectric_rel_permittivity: f64,
    /// Intrinsic carrier density n_i [m⁻³]. Default: 1.45e16
    pub intrinsic_carrier_density: f64,
    /// Temperature T [K]. Default: 300
    pub temperature: f64,
}

/// Microfluidic channel and flow.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    /// Channel cross-section width l_c [m]. Default: 4 µm
    pub channel_width: f64,
    /// Channel cross-section height h_c [m]. Default: 3 µm
    pub channel_height: f64,
    /// Transmitter–receiver distance d [m]. Default: 10 mm
    pub tx_rx_distance: f64,
    /// Mean flow velocity u [m/s]. Default: 10 µm/s
    pub flow_velocity: f64,
    /// Molecular diffusivity without flow D0 [m²/s]. Default: 1e-10
    pub base_diffusivity: f64,
    /// Effective width of the nanowire array seen by the flow w_R_eff [m].
    /// Default: (N_array − 1) · g + 2R (array footprint); overridable.
    pub receiver_effective_width: f64,
}

/// Ligand and receptor kinetics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LigandReceptorConfig {
    /// Ligands released per symbol N_m. Default: 1e9
    pub ligand_count: f64,
    /// Association rate k1 [m³/s]. Default: 3e-16
    pub binding_rate: f64,
    /// Dissociation rate k₋₁ [1/s]. Default: 20
    pub unbinding_rate: f64,
    /// Surface receptor density ρ_SR [m⁻²]. Default: 5e18
    pub receptor_density: f64,
    /// Ligand radius R_t [m]. Default: 1 nm
    pub ligand_radius: f64,
    /// Adsorbed-layer height per ligand H_t [m]. Default: 2 nm (2·R_t)
    pub ligand_height: f64,
}

/// FET readout and noise parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FetNoiseConfig {
    /// Tunneling distance λ [m]. Default: 0.1 nm
    pub tunneling_distance: f64,
    /// Oxide trap density N_ot [1/(eV·m³)]. Default: 2.3e30 (2.3e24 eV⁻¹cm⁻³).
    /// Zero is allowed (ideal oxide, binding-noise-only studies).
    pub oxide_trap_density: f64,
    /// FET channel width w_R [m]. Default: 1 µm
    pub fet_channel_width: f64,
    /// FET channel length l_R [m]. Default: 1 µm
    pub fet_channel_length: f64,
    /// Oxide capacitance per unit area C_ox [F/m²]. Default: ε_d·ε0/y_d; overridable.
    pub oxide_capacitance_per_area: f64,
    /// Coulomb scattering coefficient α_s [V·s/C]. Default: 1e4
    pub scattering_coeff: f64,
    /// Carrier mobility µ_p [m²/(V·s)]. Default: 0.045
    pub mobility: f64,
    /// Threshold voltage V_TH [V]. Default: 0.4
    pub threshold_voltage: f64,
    /// Subthreshold current prefactor I_0 [A]. Default: 1 nA
    pub subthreshold_prefactor: f64,
    /// Lower edge of the noise integration band f_min [Hz]. Default: 1e-4
    pub f_min: f64,
    /// Upper edge of the noise integration band f_max [Hz]. Default: 1e4
    pub f_max: f64,
}

/// Full parameter set. Immutable after load; all other modules consume
/// shared references, so it is safe to fan out across parallel workers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub device: DeviceGeometry,
    pub material: MaterialElectrical,
    pub channel: ChannelConfig,
    pub ligand: LigandReceptorConfig,
    pub fet: FetNoiseConfig,
    /// Minimum transmitted ligand count for capacity sweeps. Default: 1e6
    pub n_tx_min: f64,
    /// Maximum transmitted ligand count for capacity sweeps. Default: 1e12
    pub n_tx_max: f64,
}

impl SystemConfig {
    /// Dissociation constant K_D = k₋₁/k1 [m⁻³].
    pub fn k_d(&self) -> f64 {
        self.ligand.unbinding_rate / self.ligand.binding_rate
    }

    /// Channel cross-section area A_c = l_c · h_c [m²].
    pub fn a_c(&self) -> f64 {
        self.channel.channel_width * self.channel.channel_height
    }

    /// Effective receptor-covered area A_eff [m²]; identified with A_e.
    pub fn a_eff(&self) -> f64 {
        self.device.effective_electrode_area
    }

    /// Total receptor count N_R = ρ_SR · A_eff.
    pub fn n_receptors(&self) -> f64 {
        self.ligand.receptor_density * self.a_eff()
    }

    /// Thermal voltage k_B·T/q [V].
    pub fn thermal_voltage(&self) -> f64 {
        crate::consts::K_B * self.material.temperature / crate::consts::Q_E
    }
}

impl Default for SystemConfig {
    fn default() -> Self {
        ConfigDoc::default().build().expect("defaults are valid")
    }
}

/// Flat external document. Every key optional; unknown keys are rejected.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    // device
    #[serde(alias = "R", skip_serializing_if = "Option::is_none")]
    pub nanowire_radius: Option<f64>,
    #[serde(alias = "L", skip_serializing_if = "Option::is_none")]
    pub nanowire_length: Option<f64>,
    #[serde(alias = "g", skip_serializing_if = "Option::is_none")]
    pub inter_wire_spacing: Option<f64>,
    #[serde(alias = "N_array", skip_serializing_if = "Option::is_none")]
    pub array_count: Option<u32>,
    #[serde(alias = "y0", skip_serializing_if = "Option::is_none")]
    pub initial_gap: Option<f64>,
    #[serde(alias = "y_d", skip_serializing_if = "Option::is_none")]
    pub dielectric_thickness: Option<f64>,
    #[serde(alias = "H", skip_serializing_if = "Option::is_none")]
    pub beam_thickness: Option<f64>,
    #[serde(alias = "alpha", skip_serializing_if = "Option::is_none")]
    pub geometric_factor: Option<f64>,
    #[serde(alias = "A_e", skip_serializing_if = "Option::is_none")]
    pub effective_electrode_area: Option<f64>,

    // material
    #[serde(alias = "E", skip_serializing_if = "Option::is_none")]
    pub youngs_modulus: Option<f64>,
    #[serde(alias = "N_A", skip_serializing_if = "Option::is_none")]
    pub substrate_doping: Option<f64>,
    #[serde(alias = "eps_s", skip_serializing_if = "Option::is_none")]
    pub substrate_rel_permittivity: Option<f64>,
    #[serde(alias = "eps_d", skip_serializing_if = "Option::is_none")]
    pub dielectric_rel_permittivity: Option<f64>,
    #[serde(alias = "n_i", skip_serializing_if = "Option::is_none")]
    pub intrinsic_carrier_density: Option<f64>,
    #[serde(alias = "T", skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,

    // channel
    #[serde(alias = "l_c", skip_serializing_if = "Option::is_none")]
    pub channel_width: Option<f64>,
    #[serde(alias = "h_c", skip_serializing_if = "Option::is_none")]
    pub channel_height: Option<f64>,
    #[serde(alias = "d", skip_serializing_if = "Option::is_none")]
    pub tx_rx_distance: Option<f64>,
    #[serde(alias = "u", skip_serializing_if = "Option::is_none")]
    pub flow_velocity: Option<f64>,
    #[serde(alias = "D0", skip_serializing_if = "Option::is_none")]
    pub base_diffusivity: Option<f64>,
    #[serde(alias = "w_R_eff", skip_serializing_if = "Option::is_none")]
    pub receiver_effective_width: Option<f64>,

    // ligand / receptor
    #[serde(alias = "N_m", skip_serializing_if = "Option::is_none")]
    pub ligand_count: Option<f64>,
    #[serde(alias = "k1", skip_serializing_if = "Option::is_none")]
    pub binding_rate: Option<f64>,
    #[serde(alias = "k_minus1", skip_serializing_if = "Option::is_none")]
    pub unbinding_rate: Option<f64>,
    #[serde(alias = "rho_SR", skip_serializing_if = "Option::is_none")]
    pub receptor_density: Option<f64>,
    #[serde(alias = "R_t", skip_serializing_if = "Option::is_none")]
    pub ligand_radius: Option<f64>,
    #[serde(alias = "H_t", skip_serializing_if = "Option::is_none")]
    pub ligand_height: Option<f64>,

    // fet / noise
    #[serde(alias = "lambda", skip_serializing_if = "Option::is_none")]
    pub tunneling_distance: Option<f64>,
    #[serde(alias = "N_ot", skip_serializing_if = "Option::is_none")]
    pub oxide_trap_density: Option<f64>,
    #[serde(alias = "w_R", skip_serializing_if = "Option::is_none")]
    pub fet_channel_width: Option<f64>,
    #[serde(alias = "l_R", skip_serializing_if = "Option::is_none")]
    pub fet_channel_length: Option<f64>,
    #[serde(alias = "C_ox", skip_serializing_if = "Option::is_none")]
    pub oxide_capacitance_per_area: Option<f64>,
    #[serde(alias = "alpha_s", skip_serializing_if = "Option::is_none")]
    pub scattering_coeff: Option<f64>,
    #[serde(alias = "mu_p", skip_serializing_if = "Option::is_none")]
    pub mobility: Option<f64>,
    #[serde(alias = "V_TH", skip_serializing_if = "Option::is_none")]
    pub threshold_voltage: Option<f64>,
    #[serde(alias = "I_0", skip_serializing_if = "Option::is_none")]
    pub subthreshold_prefactor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f_max: Option<f64>,

    // capacity sweep range
    #[serde(alias = "N_tx_min", skip_serializing_if = "Option::is_none")]
    pub n_tx_min: Option<f64>,
    #[serde(alias = "N_tx_max", skip_serializing_if = "Option::is_none")]
    pub n_tx_max: Option<f64>,
}

impl ConfigDoc {
    /// Resolve defaults, compute derived quantities, validate invariants.
    pub fn build(&self) -> Result<SystemConfig> {
        let nanowire_radius = self.nanowire_radius.unwrap_or(25e-9);
        let nanowire_length = self.nanowire_length.unwrap_or(4e-6);
        let inter_wire_spacing = self.inter_wire_spacing.unwrap_or(100e-9);
        let array_count = self.array_count.unwrap_or(10);
        let initial_gap = self.initial_gap.unwrap_or(100e-9);
        let dielectric_thickness = self.dielectric_thickness.unwrap_or(5e-9);
        let dielectric_rel_permittivity = self.dielectric_rel_permittivity.unwrap_or(3.9);

        let device = DeviceGeometry {
            nanowire_radius,
            nanowire_length,
            inter_wire_spacing,
            array_count,
            initial_gap,
            dielectric_thickness,
            beam_thickness: self.beam_thickness.unwrap_or(260e-9),
            geometric_factor: self.geometric_factor.unwrap_or(192.0),
            effective_electrode_area: self
                .effective_electrode_area
                .unwrap_or(f64::from(array_count) * 2.0 * nanowire_radius * nanowire_length),
        };

        let material = MaterialElectrical {
            youngs_modulus: self.youngs_modulus.unwrap_or(4e9),
            substrate_doping: self.substrate_doping.unwrap_or(1e22),
            substrate_rel_permittivity: self.substrate_rel_permittivity.unwrap_or(11.7),
            dielectric_rel_permittivity,
            intrinsic_carrier_density: self.intrinsic_carrier_density.unwrap_or(1.45e16),
            temperature: self.temperature.unwrap_or(300.0),
        };

        let channel = ChannelConfig {
            channel_width: self.channel_width.unwrap_or(4e-6),
            channel_height: self.channel_height.unwrap_or(3e-6),
            tx_rx_distance: self.tx_rx_distance.unwrap_or(10e-3),
            flow_velocity: self.flow_velocity.unwrap_or(10e-6),
            base_diffusivity: self.base_diffusivity.unwrap_or(1e-10),
            receiver_effective_width: self.receiver_effective_width.unwrap_or(
                f64::from(array_count.saturating_sub(1)) * inter_wire_spacing
                    + 2.0 * nanowire_radius,
            ),
        };

        let ligand_radius = self.ligand_radius.unwrap_or(1e-9);
        let ligand = LigandReceptorConfig {
            ligand_count: self.ligand_count.unwrap_or(1e9),
            binding_rate: self.binding_rate.unwrap_or(3e-16),
            unbinding_rate: self.unbinding_rate.unwrap_or(20.0),
            receptor_density: self.receptor_density.unwrap_or(5e18),
            ligand_radius,
            ligand_height: self.ligand_height.unwrap_or(2.0 * ligand_radius),
        };

        let fet = FetNoiseConfig {
            tunneling_distance: self.tunneling_distance.unwrap_or(0.1e-9),
            oxide_trap_density: self.oxide_trap_density.unwrap_or(2.3e30),
            fet_channel_width: self.fet_channel_width.unwrap_or(1e-6),
            fet_channel_length: self.fet_channel_length.unwrap_or(1e-6),
            oxide_capacitance_per_area: self
                .oxide_capacitance_per_area
                .unwrap_or(dielectric_rel_permittivity * EPS_0 / dielectric_thickness),
            scattering_coeff: self.scattering_coeff.unwrap_or(1e4),
            mobility: self.mobility.unwrap_or(0.045),
            threshold_voltage: self.threshold_voltage.unwrap_or(0.4),
            subthreshold_prefactor: self.subthreshold_prefactor.unwrap_or(1e-9),
            f_min: self.f_min.unwrap_or(1e-4),
            f_max: self.f_max.unwrap_or(1e4),
        };

        let cfg = SystemConfig {
            device,
            material,
            channel,
            ligand,
            fet,
            n_tx_min: self.n_tx_min.unwrap_or(1e6),
            n_tx_max: self.n_tx_max.unwrap_or(1e12),
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn require(ok: bool, name: &'static str, detail: String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Invariant { name, detail })
    }
}

fn positive(value: f64, name: &'static str) -> Result<()> {
    require(
        value.is_finite() && value > 0.0,
        name,
        format!("{name} = {value} must be > 0"),
    )
}

impl SystemConfig {
    /// Check every config invariant; returns the first violation.
    pub fn validate(&self) -> Result<()> {
        let d = &self.device;
        positive(d.nanowire_radius, "nanowire_radius > 0")?;
        positive(d.nanowire_length, "nanowire_length > 0")?;
        positive(d.inter_wire_spacing, "inter_wire_spacing > 0")?;
        positive(d.initial_gap, "initial_gap > 0")?;
        positive(d.dielectric_thickness, "dielectric_thickness > 0")?;
        positive(d.beam_thickness, "beam_thickness > 0")?;
        positive(d.geometric_factor, "geometric_factor > 0")?;
        positive(d.effective_electrode_area, "effective_electrode_area > 0")?;
        require(
            d.array_count >= 1,
            "array_count >= 1",
            format!("array_count = {}", d.array_count),
        )?;
        require(
            d.inter_wire_spacing > 2.0 * d.nanowire_radius,
            "inter_wire_spacing > 2R",
            format!(
                "inter_wire_spacing = {} must exceed 2R = {} (wires must not overlap)",
                d.inter_wire_spacing,
                2.0 * d.nanowire_radius
            ),
        )?;

        let m = &self.material;
        positive(m.youngs_modulus, "youngs_modulus > 0")?;
        positive(
            m.substrate_rel_permittivity,
            "substrate_rel_permittivity > 0",
        )?;
        positive(
            m.dielectric_rel_permittivity,
            "dielectric_rel_permittivity > 0",
        )?;
        positive(m.temperature, "temperature > 0")?;
        positive(m.intrinsic_carrier_density, "intrinsic_carrier_density > 0")?;
        require(
            m.substrate_doping > m.intrinsic_carrier_density,
            "substrate_doping > intrinsic_carrier_density",
            format!(
                "substrate_doping = {} must exceed n_i = {}",
                m.substrate_doping, m.intrinsic_carrier_density
            ),
        )?;

        let c = &self.channel;
        positive(c.channel_width, "channel_width > 0")?;
        positive(c.channel_height, "channel_height > 0")?;
        positive(c.tx_rx_distance, "tx_rx_distance > 0")?;
        positive(c.flow_velocity, "flow_velocity > 0")?;
        positive(c.base_diffusivity, "base_diffusivity > 0")?;
        positive(c.receiver_effective_width, "receiver_effective_width > 0")?;

        let l = &self.ligand;
        positive(l.ligand_count, "ligand_count > 0")?;
        positive(l.binding_rate, "binding_rate > 0")?;
        positive(l.unbinding_rate, "unbinding_rate > 0")?;
        positive(l.receptor_density, "receptor_density > 0")?;
        positive(l.ligand_radius, "ligand_radius > 0")?;
        positive(l.ligand_height, "ligand_height > 0")?;

        let f = &self.fet;
        positive(f.tunneling_distance, "tunneling_distance > 0")?;
        require(
            f.oxide_trap_density.is_finite() && f.oxide_trap_density >= 0.0,
            "oxide_trap_density >= 0",
            format!("oxide_trap_density = {}", f.oxide_trap_density),
        )?;
        positive(f.fet_channel_width, "fet_channel_width > 0")?;
        positive(f.fet_channel_length, "fet_channel_length > 0")?;
        positive(
            f.oxide_capacitance_per_area,
            "oxide_capacitance_per_area > 0",
        )?;
        positive(f.scattering_coeff, "scattering_coeff > 0")?;
        positive(f.mobility, "mobility > 0")?;
        positive(f.threshold_voltage, "threshold_voltage > 0")?;
        positive(f.subthreshold_prefactor, "subthreshold_prefactor > 0")?;
        require(
            f.f_min > 0.0 && f.f_min < f.f_max,
            "0 < f_min < f_max",
            format!("band = [{}, {}]", f.f_min, f.f_max),
        )?;

        require(
            self.n_tx_min >= 0.0 && self.n_tx_max > self.n_tx_min,
            "n_tx_max > n_tx_min >= 0",
            format!("n_tx range = [{}, {}]", self.n_tx_min, self.n_tx_max),
        )?;
        Ok(())
    }

    /// Parse a flat JSON document.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let doc: ConfigDoc =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        doc.build()
    }

    /// Parse an in-memory JSON value (used by the CLI for `--set` overrides).
    pub fn from_json_value(value: serde_json::Value) -> Result<Self> {
        let doc: ConfigDoc =
            serde_json::from_value(value).map_err(|e| Error::Config(e.to_string()))?;
        doc.build()
    }

    /// Load from a JSON file.
    pub fn load_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    /// Fully explicit document; reloading it reproduces this config exactly.
    pub fn to_document(&self) -> ConfigDoc {
        ConfigDoc {
            nanowire_radius: Some(self.device.nanowire_radius),
            nanowire_length: Some(self.device.nanowire_length),
            inter_wire_spacing: Some(self.device.inter_wire_spacing),
            array_count: Some(self.device.array_count),
            initial_gap: Some(self.device.initial_gap),
            dielectric_thickness: Some(self.device.dielectric_thickness),
            beam_thickness: Some(self.device.beam_thickness),
            geometric_factor: Some(self.device.geometric_factor),
            effective_electrode_area: Some(self.device.effective_electrode_area),
            youngs_modulus: Some(self.material.youngs_modulus),
            substrate_doping: Some(self.material.substrate_doping),
            substrate_rel_permittivity: Some(self.material.substrate_rel_permittivity),
            dielectric_rel_permittivity: Some(self.material.dielectric_rel_permittivity),
            intrinsic_carrier_density: Some(self.material.intrinsic_carrier_density),
            temperature: Some(self.material.temperature),
            channel_width: Some(self.channel.channel_width),
            channel_height: Some(self.channel.channel_height),
            tx_rx_distance: Some(self.channel.tx_rx_distance),
            flow_velocity: Some(self.channel.flow_velocity),
            base_diffusivity: Some(self.channel.base_diffusivity),
            receiver_effective_width: Some(self.channel.receiver_effective_width),
            ligand_count: Some(self.ligand.ligand_count),
            binding_rate: Some(self.ligand.binding_rate),
            unbinding_rate: Some(self.ligand.unbinding_rate),
            receptor_density: Some(self.ligand.receptor_density),
            ligand_radius: Some(self.ligand.ligand_radius),
            ligand_height: Some(self.ligand.ligand_height),
            tunneling_distance: Some(self.fet.tunneling_distance),
            oxide_trap_density: Some(self.fet.oxide_trap_density),
            fet_channel_width: Some(self.fet.fet_channel_width),
            fet_channel_length: Some(self.fet.fet_channel_length),
            oxide_capacitance_per_area: Some(self.fet.oxide_capacitance_per_area),
            scattering_coeff: Some(self.fet.scattering_coeff),
            mobility: Some(self.fet.mobility),
            threshold_voltage: Some(self.fet.threshold_voltage),
            subthreshold_prefactor: Some(self.fet.subthreshold_prefactor),
            f_min: Some(self.fet.f_min),
            f_max: Some(self.fet.f_max),
            n_tx_min: Some(self.n_tx_min),
            n_tx_max: Some(self.n_tx_max),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_table_defaults() {
        let cfg = SystemConfig::from_json_str("{}").unwrap();
        assert_eq!(cfg.device.nanowire_radius, 25e-9);
        assert_eq!(cfg.device.nanowire_length, 4e-6);
        assert_eq!(cfg.device.initial_gap, 100e-9);
        assert_eq!(cfg.device.beam_thickness, 260e-9);
        assert_eq!(cfg.device.dielectric_thickness, 5e-9);
        assert_eq!(cfg.material.substrate_doping, 1e22);
        assert_eq!(cfg.material.youngs_modulus, 4e9);
        assert_eq!(cfg.channel.tx_rx_distance, 10e-3);
        assert_eq!(cfg.channel.flow_velocity, 10e-6);
        assert_eq!(cfg.ligand.ligand_count, 1e9);
        assert_eq!(cfg.ligand.binding_rate, 3e-16);
        assert_eq!(cfg.ligand.unbinding_rate, 20.0);
        assert_eq!(cfg.ligand.receptor_density, 5e18);
        assert_eq!(cfg.fet.oxide_trap_density, 2.3e30);
    }

    #[test]
    fn overlapping_wires_rejected() {
        let err = SystemConfig::from_json_str(r#"{"g": 40e-9, "R": 25e-9}"#).unwrap_err();
        match err {
            Error::Invariant { name, .. } => assert_eq!(name, "inter_wire_spacing > 2R"),
            other => panic!("expected invariant error, got {other}"),
        }
    }

    #[test]
    fn dissociation_constant_from_rates() {
        let cfg = SystemConfig::default();
        let expect = 20.0 / 3e-16;
        assert!((cfg.k_d() - expect).abs() / expect < 1e-15);
        assert!((cfg.k_d() - 6.667e16).abs() / 6.667e16 < 1e-3);
    }

    #[test]
    fn unknown_key_named_in_error() {
        let err = SystemConfig::from_json_str(r#"{"not_a_key": 1.0}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("not_a_key"), "message was: {msg}");
    }

    #[test]
    fn aliases_match_canonical_names() {
        let a = SystemConfig::from_json_str(r#"{"R": 30e-9, "N_m": 1e7}"#).unwrap();
        let b = SystemConfig::from_json_str(r#"{"nanowire_radius": 30e-9, "ligand_count": 1e7}"#)
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn round_trip_is_identity() {
        let cfg = SystemConfig::from_json_str(r#"{"R": 30e-9, "N_array": 7, "d": 2e-3}"#).unwrap();
        let text = serde_json::to_string(&cfg.to_document()).unwrap();
        let back = SystemConfig::from_json_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn derived_quantities_recompute_from_sources() {
        let cfg = SystemConfig::default();
        let d = &cfg.device;
        assert_eq!(
            d.effective_electrode_area,
            f64::from(d.array_count) * 2.0 * d.nanowire_radius * d.nanowire_length
        );
        assert_eq!(
            cfg.channel.receiver_effective_width,
            f64::from(d.array_count - 1) * d.inter_wire_spacing + 2.0 * d.nanowire_radius
        );
        assert_eq!(
            cfg.fet.oxide_capacitance_per_area,
            cfg.material.dielectric_rel_permittivity * EPS_0 / d.dielectric_thickness
        );
        assert_eq!(
            cfg.a_c(),
            cfg.channel.channel_width * cfg.channel.channel_height
        );
    }

    #[test]
    fn derived_defaults_overridable() {
        let cfg = SystemConfig::from_json_str(r#"{"A_e": 1e-11, "C_ox": 1e-2}"#).unwrap();
        assert_eq!(cfg.device.effective_electrode_area, 1e-11);
        assert_eq!(cfg.fet.oxide_capacitance_per_area, 1e-2);
    }

    #[test]
    fn zero_trap_density_allowed() {
        let cfg = SystemConfig::from_json_str(r#"{"N_ot": 0.0}"#).unwrap();
        assert_eq!(cfg.fet.oxide_trap_density, 0.0);
    }

    #[test]
    fn inverted_band_rejected() {
        let err = SystemConfig::from_json_str(r#"{"f_min": 10.0, "f_max": 1.0}"#).unwrap_err();
        assert!(err.to_string().contains("f_min"));
    }
}
