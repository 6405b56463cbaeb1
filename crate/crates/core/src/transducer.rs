//! Mechanical-to-electrical transduction around the selected bias point:
//! bound-ligand density to stiffness change, gate displacement,
//! surface-potential shift, sensitivity, mean drain current, and
//! transconductance.
//!
//! The post-capture state is evaluated perturbatively with the near-pull-in
//! square-root displacement law; `resolve_deflection` re-runs the full
//! equilibrium with the stiffened spring as a cross-check of that law.

use serde::Serialize;

use crate::config::SystemConfig;
use crate::consts::{K_B, Q_E};
use crate::electromech::{self, EquilibriumState};
use crate::error::{Error, Result};

/// Transduction chain outputs for one symbol.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TransductionResult {
    /// Mean effective stiffness change Δk_eff [N/m].
    pub delta_k_eff: f64,
    /// Mean gate displacement Δy [m] (gap widens as the array stiffens).
    pub delta_y: f64,
    /// Mean surface-potential change Δψ [V].
    pub delta_psi: f64,
    /// Sensitivity S = I_DS1/I_DS2 (dimensionless, ≥ 1 at default signs).
    pub sensitivity: f64,
    /// Pre-capture drain current I_DS1 [A].
    pub i_ds1: f64,
    /// Mean post-capture (output) current μ_I = I_DS1/S [A].
    pub mean_current: f64,
    /// Transconductance g_FET = ∂I_DS/∂V_G [A/V].
    pub g_fet: f64,
    /// Surface-potential shift for a single bound ligand ψ_L [V].
    pub psi_l: f64,
}

/// Stiffness change for bound density `n_s` [m⁻²]: the adsorbed layer
/// ΔR = N_s·πR_t²·H_t thickens each wire, and k ∝ R⁴ gives
/// Δk/k = 4ΔR/R per wire, summed over the array.
pub fn delta_stiffness(n_s: f64, cfg: &SystemConfig) -> Result<f64> {
    if n_s.is_nan() || n_s < 0.0 {
        return Err(Error::Domain {
            context: "delta_stiffness",
            detail: format!("bound density N_s = {n_s} must be >= 0"),
        });
    }
    let a_t = std::f64::consts::PI * cfg.ligand.ligand_radius.powi(2);
    let delta_r = n_s * a_t * cfg.ligand.ligand_height;
    let k_single = electromech::stiffness_single(&cfg.device, &cfg.material);
    let delta_k_single = k_single * 4.0 * delta_r / cfg.device.nanowire_radius;
    Ok(f64::from(cfg.device.array_count) * delta_k_single)
}

/// Near-pull-in displacement from a stiffness change:
/// Δy = √(ε0·A_e·(V_G − ψ_s)²/(2(3y − y0)) · Δk_eff/k_eff²).
pub fn delta_deflection(
    delta_k_eff: f64,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
) -> Result<f64> {
    if delta_k_eff < 0.0 {
        return Err(Error::Domain {
            context: "delta_deflection",
            detail: format!("delta_k_eff = {delta_k_eff} must be >= 0"),
        });
    }
    let y0 = cfg.device.initial_gap;
    let depth = 3.0 * bias.gap - y0;
    if depth <= 0.0 {
        return Err(Error::BiasRegime(format!(
            "3y - y0 = {depth:.3e} <= 0: operating point too deep for the near-pull-in law"
        )));
    }
    let drive = bias.gate_voltage - bias.surface_potential;
    let lead =
        crate::consts::EPS_0 * cfg.device.effective_electrode_area * drive * drive / (2.0 * depth);
    Ok((lead * delta_k_eff / (bias.stiffness * bias.stiffness)).sqrt())
}

/// Mean surface-potential change:
/// Δψ = (−k_eff·Δy + Δk_eff·(y0 − y)) / (q·ε_s·N_A·A_e).
pub fn delta_surface_potential(
    delta_k_eff: f64,
    delta_y: f64,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
) -> f64 {
    let numer = -bias.stiffness * delta_y + delta_k_eff * (cfg.device.initial_gap - bias.gap);
    let denom = Q_E
        * cfg.material.substrate_rel_permittivity
        * cfg.material.substrate_doping
        * cfg.device.effective_electrode_area;
    numer / denom
}

/// Sensitivity exponent in the direct (Δy, Δk) form; equals −qΔψ/(k_B·T)
/// identically because q cancels between the two expressions.
pub fn sensitivity_exponent_direct(
    delta_k_eff: f64,
    delta_y: f64,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
) -> f64 {
    let numer = bias.stiffness * delta_y - delta_k_eff * (cfg.device.initial_gap - bias.gap);
    let denom = K_B
        * cfg.material.temperature
        * cfg.material.substrate_rel_permittivity
        * cfg.material.substrate_doping
        * cfg.device.effective_electrode_area;
    numer / denom
}

/// Drain current at a gate voltage: minimal subthreshold exponential with
/// ideality 1, I_DS = I_0·exp(q·ψ_s/(k_B·T)). The sensitivity ratio is
/// independent of the prefactor.
pub fn drain_current(gate_voltage: f64, cfg: &SystemConfig) -> Result<f64> {
    let state = electromech::solve_equilibrium(gate_voltage, cfg)?;
    let exponent = state.surface_potential / cfg.thermal_voltage();
    if exponent.abs() > 700.0 {
        return Err(Error::Overflow {
            context: "drain_current",
            exponent,
        });
    }
    Ok(cfg.fet.subthreshold_prefactor * exponent.exp())
}

/// Transconductance by central finite difference through the full
/// equilibrium solve (step 1e-4·V_G).
pub fn transconductance(bias: &EquilibriumState, cfg: &SystemConfig) -> Result<f64> {
    let h = 1e-4 * bias.gate_voltage;
    let up = drain_current(bias.gate_voltage + h, cfg)?;
    let down = drain_current(bias.gate_voltage - h, cfg)?;
    Ok((up - down) / (2.0 * h))
}

/// Sensitivity and currents for a given stiffness perturbation:
/// S = exp(−qΔψ/(k_B·T)), I_DS1 = I_0·exp(qψ_s/(k_B·T)), μ_I = I_DS1/S.
pub fn sensitivity(
    delta_k_eff: f64,
    delta_y: f64,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
) -> Result<(f64, f64, f64, f64)> {
    let delta_psi = delta_surface_potential(delta_k_eff, delta_y, bias, cfg);
    let exponent = -delta_psi / cfg.thermal_voltage();
    if exponent.abs() > 700.0 {
        return Err(Error::Overflow {
            context: "sensitivity",
            exponent,
        });
    }
    let s = exponent.exp();
    let i_ds1 =
        cfg.fet.subthreshold_prefactor * (bias.surface_potential / cfg.thermal_voltage()).exp();
    let g_fet = transconductance(bias, cfg)?;
    Ok((s, i_ds1 / s, i_ds1, g_fet))
}

/// Full transduction chain for mean bound-receptor count `mean_bound`.
/// Also evaluates the single-ligand shift ψ_L (bound density 1/A_eff)
/// used by the noise and capacity models.
pub fn transduce(
    mean_bound: f64,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
) -> Result<TransductionResult> {
    let n_s = mean_bound / cfg.a_eff();
    let delta_k_eff = delta_stiffness(n_s, cfg)?;
    let delta_y = delta_deflection(delta_k_eff, bias, cfg)?;
    let delta_psi = delta_surface_potential(delta_k_eff, delta_y, bias, cfg);
    let (s, mean_current, i_ds1, g_fet) = sensitivity(delta_k_eff, delta_y, bias, cfg)?;

    let dk_single = delta_stiffness(1.0 / cfg.a_eff(), cfg)?;
    let dy_single = delta_deflection(dk_single, bias, cfg)?;
    let psi_l = delta_surface_potential(dk_single, dy_single, bias, cfg);

    Ok(TransductionResult {
        delta_k_eff,
        delta_y,
        delta_psi,
        sensitivity: s,
        i_ds1,
        mean_current,
        g_fet,
        psi_l,
    })
}

/// Cross-check of the perturbative displacement: re-solve the equilibrium
/// with the stiffened spring (k_eff + Δk_eff) and return
/// (perturbative Δy, re-solved Δy).
pub fn resolve_deflection(
    delta_k_eff: f64,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
) -> Result<(f64, f64)> {
    resolve_deflection_with(delta_k_eff, bias, cfg, electromech::Electrode::Array)
}

/// [`resolve_deflection`] with an explicit electrode model.
pub fn resolve_deflection_with(
    delta_k_eff: f64,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
    electrode: electromech::Electrode,
) -> Result<(f64, f64)> {
    let perturbative = delta_deflection(delta_k_eff, bias, cfg)?;
    let scale = (bias.stiffness + delta_k_eff) / bias.stiffness;
    let mut stiffened = cfg.clone();
    // rescale through the geometric factor so only k changes
    stiffened.device.geometric_factor *= scale;
    let state = electromech::solve_equilibrium_with(bias.gate_voltage, &stiffened, electrode)?;
    Ok((perturbative, state.gap - bias.gap))
}
