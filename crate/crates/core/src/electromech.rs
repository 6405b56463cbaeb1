//! Array electromechanics: stiffness, electrode capacitance and force, the
//! nonlinear semiconductor field, the self-consistent pre-capture
//! equilibrium, pull-in search, and near-pull-in bias selection.
//!
//! The suspended array is a set of fixed–fixed beams acting as parallel
//! springs against the electrostatic pull of the gate. Below pull-in the
//! force balance has two roots in the gap; the largest-gap root is the
//! stable branch reached by quasi-static loading from V_G = 0 and is the
//! one returned here.

use serde::Serialize;

use crate::config::{DeviceGeometry, MaterialElectrical, SystemConfig};
use crate::consts::{EPS_0, K_B, Q_E};
use crate::error::{Error, Result};
use crate::rootfind;

/// Upper bracket for the surface-potential solve [V]; beyond strong
/// inversion for any admissible doping here.
const PSI_MAX: f64 = 1.5;

/// Grid resolution for isolating the largest force-balance root.
const GAP_SCAN_STEPS: usize = 4096;

/// Self-consistent pre-capture state at a given gate voltage.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EquilibriumState {
    /// Applied gate voltage V_G [V].
    pub gate_voltage: f64,
    /// Air gap y [m], 0 < y <= y0.
    pub gap: f64,
    /// Surface potential ψ_s [V].
    pub surface_potential: f64,
    /// Array capacitance at this gap [F].
    pub capacitance: f64,
    /// Array stiffness k_eff [N/m].
    pub stiffness: f64,
    /// True when the net-force derivative at (y, V_G) is restoring.
    pub stable: bool,
}

/// Pull-in instability point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PullInPoint {
    /// Largest gate voltage with a stable equilibrium [V].
    pub v_pi: f64,
    /// Gap at that voltage [m].
    pub y_pi: f64,
}

/// Electrode model used by the equilibrium solver. `Planar` replaces the
/// array capacitance/force by the parallel-plate forms; it exists for
/// limit checks against the classical pull-in result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Electrode {
    Array,
    Planar,
}

/// Stiffness of one fixed–fixed cylindrical beam: α·E·π·R⁴/(4·L³) [N/m].
pub fn stiffness_single(geom: &DeviceGeometry, mat: &MaterialElectrical) -> f64 {
    let r4 = geom.nanowire_radius.powi(4);
    geom.geometric_factor * mat.youngs_modulus * std::f64::consts::PI * r4
        / (4.0 * geom.nanowire_length.powi(3))
}

/// N identical springs in parallel.
pub fn stiffness_array(k_single: f64, array_count: u32) -> f64 {
    f64::from(array_count) * k_single
}

/// ln(sinh(x)) for x > 0 without overflow: x − ln 2 + ln(1 − e^(−2x)).
/// Beyond x ≈ 30 the correction term is below machine epsilon, which is
/// exactly the asymptotic form used for large arguments.
fn ln_sinh(x: f64) -> f64 {
    x - std::f64::consts::LN_2 + (-(-(2.0 * x)).exp()).ln_1p()
}

/// Logarithm appearing in the array capacitance: ln(sinh(2π(y+R)/g)/(πR/g)).
fn array_log(y: f64, geom: &DeviceGeometry) -> Result<f64> {
    let g = geom.inter_wire_spacing;
    let r = geom.nanowire_radius;
    let x = 2.0 * std::f64::consts::PI * (y + r) / g;
    let val = ln_sinh(x) - (std::f64::consts::PI * r / g).ln();
    if val <= 0.0 {
        return Err(Error::Domain {
            context: "capacitance_array",
            detail: format!(
                "log argument <= 1 at y = {y}, g = {g}, R = {r} (non-physical geometry)"
            ),
        });
    }
    Ok(val)
}

/// Array electrode capacitance: 2π·ε0·L / ln(sinh(2π(y+R)/g)/(πR/g)) [F].
pub fn capacitance_array(y: f64, geom: &DeviceGeometry) -> Result<f64> {
    if y <= 0.0 {
        return Err(Error::Domain {
            context: "capacitance_array",
            detail: format!("gap y = {y} must be > 0"),
        });
    }
    let ln = array_log(y, geom)?;
    Ok(2.0 * std::f64::consts::PI * EPS_0 * geom.nanowire_length / ln)
}

/// Isolated-cylinder limit of the array capacitance (g → ∞):
/// 2π·ε0·L / ln(2(1 + y/R)) [F].
pub fn capacitance_cylindrical(y: f64, geom: &DeviceGeometry) -> f64 {
    2.0 * std::f64::consts::PI * EPS_0 * geom.nanowire_length
        / (2.0 * (1.0 + y / geom.nanowire_radius)).ln()
}

/// Parallel-plate capacitance ε0·A_e/y [F].
pub fn capacitance_planar(y: f64, geom: &DeviceGeometry) -> f64 {
    EPS_0 * geom.effective_electrode_area / y
}

/// Electrostatic force on the array gate at voltage actuation [N]:
/// 2π²·ε0·L·coth(2π(y+R)/g) / (g·ln²(sinh(2π(y+R)/g)/(πR/g))) · V_G².
pub fn force_electrostatic(y: f64, gate_voltage: f64, geom: &DeviceGeometry) -> Result<f64> {
    if y <= 0.0 {
        return Err(Error::Domain {
            context: "force_electrostatic",
            detail: format!("gap y = {y} must be > 0"),
        });
    }
    let g = geom.inter_wire_spacing;
    let x = 2.0 * std::f64::consts::PI * (y + geom.nanowire_radius) / g;
    let ln = array_log(y, geom)?;
    let coth = 1.0 / x.tanh();
    Ok(
        2.0 * std::f64::consts::PI.powi(2) * EPS_0 * geom.nanowire_length * coth / (g * ln * ln)
            * gate_voltage
            * gate_voltage,
    )
}

/// Parallel-plate force ε0·A_e·V²/(2y²) [N].
pub fn force_planar(y: f64, gate_voltage: f64, geom: &DeviceGeometry) -> f64 {
    EPS_0 * geom.effective_electrode_area * gate_voltage * gate_voltage / (2.0 * y * y)
}

impl Electrode {
    pub fn capacitance(self, y: f64, geom: &DeviceGeometry) -> Result<f64> {
        match self {
            Electrode::Array => capacitance_array(y, geom),
            Electrode::Planar => Ok(capacitance_planar(y, geom)),
        }
    }

    pub fn force(self, y: f64, gate_voltage: f64, geom: &DeviceGeometry) -> Result<f64> {
        match self {
            Electrode::Array => force_electrostatic(y, gate_voltage, geom),
            Electrode::Planar => Ok(force_planar(y, gate_voltage, geom)),
        }
    }
}

/// Electric field at the substrate–dielectric interface E_s(ψ_s) [V/m] on
/// the depletion/inversion branch (ψ_s ≥ 0).
pub fn semiconductor_field(psi_s: f64, mat: &MaterialElectrical) -> Result<f64> {
    if psi_s < 0.0 {
        return Err(Error::Domain {
            context: "semiconductor_field",
            detail: format!("psi_s = {psi_s} must be >= 0 (depletion/inversion branch)"),
        });
    }
    let vt = K_B * mat.temperature / Q_E;
    // exponent clamp keeps extreme (T, psi) combinations finite
    let exp_c = |x: f64| x.min(700.0).exp();
    let ratio2 = (mat.intrinsic_carrier_density / mat.substrate_doping).powi(2);
    let hole_term = psi_s + (exp_c(-psi_s / vt) - 1.0) * vt;
    let electron_term = psi_s - (exp_c(psi_s / vt) - 1.0) * vt;
    let radicand = hole_term - ratio2 * electron_term;
    let radicand = if radicand < 0.0 {
        // mathematically >= 0; tolerate rounding noise only
        if radicand.abs() < 1e-30 * (psi_s + vt) {
            0.0
        } else {
            return Err(Error::Domain {
                context: "semiconductor_field",
                detail: format!("negative radicand {radicand:.3e} at psi_s = {psi_s}"),
            });
        }
    } else {
        radicand
    };
    let prefactor =
        (2.0 * Q_E * mat.substrate_doping / (EPS_0 * mat.substrate_rel_permittivity)).sqrt();
    Ok(prefactor * radicand.sqrt())
}

/// Gate voltage implied by ψ_s at gap y (potential drops across the air
/// gap, dielectric, and substrate).
fn gate_voltage_of_psi(psi_s: f64, y: f64, cfg: &SystemConfig) -> Result<f64> {
    let es = semiconductor_field(psi_s, &cfg.material)?;
    let eff_gap = y + cfg.device.dielectric_thickness / cfg.material.dielectric_rel_permittivity;
    Ok(eff_gap * cfg.material.substrate_rel_permittivity * es + psi_s)
}

/// Solve the gate-voltage relation for ψ_s at fixed gap. The relation is
/// strictly increasing in ψ_s, so a bracketed solve on [0, PSI_MAX] cannot
/// miss. Relative residual is at the floating-point noise floor.
pub fn solve_surface_potential(y: f64, gate_voltage: f64, cfg: &SystemConfig) -> Result<f64> {
    if gate_voltage == 0.0 {
        return Ok(0.0);
    }
    let mut h = |psi: f64| gate_voltage_of_psi(psi, y, cfg).map_or(f64::NAN, |v| v - gate_voltage);
    let h0 = h(0.0);
    let h1 = h(PSI_MAX);
    if h1 < 0.0 {
        return Err(Error::RootFind {
            context: "solve_surface_potential",
            detail: format!("V_G = {gate_voltage} exceeds the strong-inversion bracket"),
        });
    }
    let psi = rootfind::brent_with(
        &mut h,
        0.0,
        PSI_MAX,
        h0,
        h1,
        4.0 * f64::EPSILON,
        "solve_surface_potential",
    )?;
    Ok(psi)
}

/// Self-consistent equilibrium (y, ψ_s) at gate voltage `gate_voltage`
/// with the chosen electrode model. Among multiple force-balance roots the
/// largest-gap (stable-branch) one is returned.
///
/// The force balance is solved in the deflection variable δ = y0 − y:
/// at light loading δ is many orders below y0, and subtracting the solved
/// gap from y0 would destroy the spring-force precision the 1e-10
/// residual contract requires.
pub fn solve_equilibrium_with(
    gate_voltage: f64,
    cfg: &SystemConfig,
    electrode: Electrode,
) -> Result<EquilibriumState> {
    if gate_voltage < 0.0 {
        return Err(Error::Domain {
            context: "solve_equilibrium",
            detail: format!("V_G = {gate_voltage} must be >= 0"),
        });
    }
    let y0 = cfg.device.initial_gap;
    let k_eff = stiffness_array(
        stiffness_single(&cfg.device, &cfg.material),
        cfg.device.array_count,
    );

    if gate_voltage == 0.0 {
        return Ok(EquilibriumState {
            gate_voltage,
            gap: y0,
            surface_potential: 0.0,
            capacitance: electrode.capacitance(y0, &cfg.device)?,
            stiffness: k_eff,
            stable: true,
        });
    }

    let y_floor = cfg.device.dielectric_thickness;
    if y_floor >= y0 {
        return Err(Error::Domain {
            context: "solve_equilibrium",
            detail: format!("gap bracket empty: y_d = {y_floor} >= y0 = {y0}"),
        });
    }

    // net restoring force as a function of deflection
    let mut f = |delta: f64| match electrode.force(y0 - delta, gate_voltage, &cfg.device) {
        Ok(f_elec) => k_eff * delta - f_elec,
        Err(_) => f64::NAN,
    };

    // walk up from zero deflection: the first sign change brackets the
    // stable (largest-gap) root
    let delta_max = y0 - y_floor;
    let (d_lo, d_hi, f_lo, f_hi) =
        rootfind::scan_up_for_bracket(&mut f, 0.0, delta_max, GAP_SCAN_STEPS)
            .ok_or(Error::PullInExceeded { gate_voltage })?;

    let deflection = if d_lo == d_hi {
        d_lo
    } else {
        rootfind::brent_with(&mut f, d_lo, d_hi, f_lo, f_hi, 0.0, "solve_equilibrium")?
    };
    let gap = y0 - deflection;

    // residual audit against the contract tolerance
    let spring = k_eff * deflection;
    let f_elec = electrode.force(gap, gate_voltage, &cfg.device)?;
    let scale = spring.abs().max(f_elec.abs());
    if scale > 0.0 && (spring - f_elec).abs() / scale > 1e-10 {
        return Err(Error::Numeric(format!(
            "force-balance residual {:.3e} exceeds 1e-10 at V_G = {gate_voltage}",
            (spring - f_elec).abs() / scale
        )));
    }

    // numeric stability test: restoring net force means d(F_s - F_elec)/dy
    // over increasing deflection stays positive at the root
    let h = 1e-6 * y0;
    let stable = (f(deflection + h) - f((deflection - h).max(0.0))) > 0.0;

    let surface_potential = solve_surface_potential(gap, gate_voltage, cfg)?;
    Ok(EquilibriumState {
        gate_voltage,
        gap,
        surface_potential,
        capacitance: electrode.capacitance(gap, &cfg.device)?,
        stiffness: k_eff,
        stable,
    })
}

/// Equilibrium with the array electrode model.
pub fn solve_equilibrium(gate_voltage: f64, cfg: &SystemConfig) -> Result<EquilibriumState> {
    solve_equilibrium_with(gate_voltage, cfg, Electrode::Array)
}

fn solves_stable(gate_voltage: f64, cfg: &SystemConfig, electrode: Electrode) -> Result<bool> {
    match solve_equilibrium_with(gate_voltage, cfg, electrode) {
        Ok(state) => Ok(state.stable),
        Err(Error::PullInExceeded { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Locate the pull-in point: doubling search for an upper bound, then
/// bisection to 1e-6 relative on the largest V_G with a stable equilibrium.
pub fn find_pullin_with(cfg: &SystemConfig, electrode: Electrode) -> Result<PullInPoint> {
    let mut lo = 0.0_f64;
    let mut hi = 1e-3_f64;
    let mut doublings = 0u32;
    while solves_stable(hi, cfg, electrode)? {
        lo = hi;
        hi *= 2.0;
        doublings += 1;
        if doublings > 1000 {
            return Err(Error::RootFind {
                context: "find_pullin",
                detail: "no pull-in below 2^1000 * 1 mV; configuration error".into(),
            });
        }
    }
    while hi - lo > 1e-6 * hi {
        let mid = 0.5 * (lo + hi);
        if solves_stable(mid, cfg, electrode)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if lo == 0.0 {
        return Err(Error::RootFind {
            context: "find_pullin",
            detail: "no stable equilibrium at any probed voltage".into(),
        });
    }
    let state = solve_equilibrium_with(lo, cfg, electrode)?;
    Ok(PullInPoint {
        v_pi: lo,
        y_pi: state.gap,
    })
}

/// Pull-in point of the array model.
pub fn find_pullin(cfg: &SystemConfig) -> Result<PullInPoint> {
    find_pullin_with(cfg, Electrode::Array)
}

/// Operating point at V_G = fraction · V_PI (the pre-capture bias used by
/// the transducer and link metrics). `fraction` must lie strictly in (0, 1).
pub fn select_bias(cfg: &SystemConfig, fraction: f64) -> Result<(EquilibriumState, PullInPoint)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::Domain {
            context: "select_bias",
            detail: format!("bias fraction {fraction} must lie strictly in (0, 1)"),
        });
    }
    let pullin = find_pullin(cfg)?;
    let state = solve_equilibrium(fraction * pullin.v_pi, cfg)?;
    Ok((state, pullin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::SystemConfig;

    fn defaults() -> SystemConfig {
        SystemConfig::default()
    }

    #[test]
    fn stiffness_closed_form() {
        let cfg = defaults();
        let k = stiffness_single(&cfg.device, &cfg.material);
        // independent evaluation of the closed form at Table defaults
        let expect =
            192.0 * 4e9 * std::f64::consts::PI * (25e-9_f64).powi(4) / (4.0 * (4e-6_f64).powi(3));
        assert!((k - expect).abs() / expect < 1e-14);
        assert!((k - 3.68e-3).abs() / 3.68e-3 < 5e-3);
    }

    #[test]
    fn stiffness_scaling_laws() {
        let cfg = defaults();
        let k = stiffness_single(&cfg.device, &cfg.material);
        let mut wide = cfg.clone();
        wide.device.nanowire_radius *= 2.0;
        let k_wide = stiffness_single(&wide.device, &wide.material);
        assert!((k_wide / k - 16.0).abs() < 1e-12);
        let mut long = cfg.clone();
        long.device.nanowire_length *= 2.0;
        let k_long = stiffness_single(&long.device, &long.material);
        assert!((k_long / k - 0.125).abs() < 1e-12);
    }

    #[test]
    fn stiffness_array_linearity() {
        assert_eq!(stiffness_array(3.68e-3, 10), 3.68e-2);
        assert_eq!(stiffness_array(1.23, 1), 1.23);
        assert_eq!(stiffness_array(0.0, 17), 0.0);
    }

    #[test]
    fn capacitance_reference_value() {
        let cfg = defaults();
        let c = capacitance_array(100e-9, &cfg.device).unwrap();
        // independent path: plain sinh/ln (no overflow at this argument)
        let x = 2.0 * std::f64::consts::PI * 125e-9 / 100e-9;
        let direct = 2.0 * std::f64::consts::PI * EPS_0 * 4e-6
            / (x.sinh() / (std::f64::consts::PI * 0.25)).ln();
        assert!((c - direct).abs() / direct < 1e-12);
        assert!((c - 3.01e-17).abs() / 3.01e-17 < 5e-3);
    }

    #[test]
    fn capacitance_reaches_cylindrical_limit() {
        let cfg = defaults();
        let mut geom = cfg.device.clone();
        geom.inter_wire_spacing = 1e6 * (100e-9 + geom.nanowire_radius);
        let c = capacitance_array(100e-9, &geom).unwrap();
        let cyl = capacitance_cylindrical(100e-9, &geom);
        assert!((c - cyl).abs() / cyl < 5e-3);
        assert!((cyl - 9.67e-17).abs() / 9.67e-17 < 5e-3);
    }

    #[test]
    fn capacitance_decreases_with_gap() {
        let cfg = defaults();
        let c1 = capacitance_array(100e-9, &cfg.device).unwrap();
        let c2 = capacitance_array(200e-9, &cfg.device).unwrap();
        assert!(c2 < c1);
    }

    #[test]
    fn capacitance_monotone_between_planar_and_cylindrical_trends() {
        // Per wire, Eq.-style array capacitance rises with spacing toward
        // the isolated-cylinder value (x·coth(x) > 1 makes the log argument
        // fall with g). Normalized per unit cell width it falls
        // monotonically from the planar-sheet trend toward zero; that is
        // the planar >= array >= cylindrical ordering.
        let cfg = defaults();
        let y = 80e-9;
        let mut last_per_wire = 0.0;
        let mut last_per_cell = f64::INFINITY;
        for i in 0..40 {
            let mut geom = cfg.device.clone();
            geom.inter_wire_spacing = 60e-9 * 10f64.powf(i as f64 * 0.1);
            let c = capacitance_array(y, &geom).unwrap();
            let cyl = capacitance_cylindrical(y, &geom);
            assert!(c < cyl, "per-wire C must stay below the cylinder limit");
            assert!(c > last_per_wire);
            last_per_wire = c;
            let per_cell = c / geom.inter_wire_spacing;
            assert!(
                per_cell < last_per_cell,
                "C/g not decreasing at spacing {}",
                geom.inter_wire_spacing
            );
            last_per_cell = per_cell;
        }
        // the g -> 0 trend of C/g is the planar sheet value per unit area
        let mut tight = cfg.device.clone();
        tight.inter_wire_spacing = 51e-9;
        let per_cell = capacitance_array(y, &tight).unwrap() / tight.inter_wire_spacing;
        let planar_sheet = EPS_0 * tight.nanowire_length / (y + tight.nanowire_radius);
        assert!((per_cell - planar_sheet).abs() / planar_sheet < 0.25);
    }

    #[test]
    fn overflow_guard_continuous() {
        // ln_sinh stays smooth across the asymptotic threshold
        let a = ln_sinh(29.999_999);
        let b = ln_sinh(30.000_001);
        assert!((b - a).abs() < 1e-5);
        // and matches x - ln 2 deep in the asymptotic regime
        assert_eq!(ln_sinh(500.0), 500.0 - std::f64::consts::LN_2);
    }

    #[test]
    fn force_reference_value() {
        let cfg = defaults();
        let f = force_electrostatic(100e-9, 1.0, &cfg.device).unwrap();
        assert!((f - 1.28e-10).abs() / 1.28e-10 < 1e-2);
    }

    #[test]
    fn force_zero_voltage() {
        let cfg = defaults();
        assert_eq!(force_electrostatic(80e-9, 0.0, &cfg.device).unwrap(), 0.0);
    }

    #[test]
    fn force_matches_capacitance_gradient() {
        // F = 1/2 V^2 |dC/dy| with dC/dy by central differences
        let cfg = defaults();
        for &y in &[30e-9, 100e-9, 400e-9] {
            for &g in &[80e-9, 150e-9, 1e-6] {
                let mut geom = cfg.device.clone();
                geom.inter_wire_spacing = g;
                let h = 1e-6 * y;
                let dc = (capacitance_array(y + h, &geom).unwrap()
                    - capacitance_array(y - h, &geom).unwrap())
                    / (2.0 * h);
                let f = force_electrostatic(y, 1.0, &geom).unwrap();
                let oracle = 0.5 * dc.abs();
                assert!(
                    (f - oracle).abs() / oracle < 1e-6,
                    "mismatch at y={y}, g={g}: f={f}, oracle={oracle}"
                );
            }
        }
    }

    #[test]
    fn field_zero_at_flat_band() {
        let cfg = defaults();
        assert_eq!(semiconductor_field(0.0, &cfg.material).unwrap(), 0.0);
    }

    #[test]
    fn field_monotone_in_depletion() {
        let cfg = defaults();
        let vt = cfg.thermal_voltage();
        let phi_f =
            vt * (cfg.material.substrate_doping / cfg.material.intrinsic_carrier_density).ln();
        let mut last = -1.0;
        for i in 1..=400 {
            let psi = 2.0 * phi_f * i as f64 / 400.0;
            let e = semiconductor_field(psi, &cfg.material).unwrap();
            assert!(e > last, "field not increasing at psi = {psi}");
            last = e;
        }
    }

    #[test]
    fn field_matches_depletion_approximation() {
        let cfg = defaults();
        let e = semiconductor_field(0.3, &cfg.material).unwrap();
        let depl = (2.0 * Q_E * cfg.material.substrate_doping * 0.3
            / (EPS_0 * cfg.material.substrate_rel_permittivity))
            .sqrt();
        assert!((e - depl).abs() / depl < 0.05);
    }

    #[test]
    fn field_rejects_negative_psi() {
        let cfg = defaults();
        assert!(semiconductor_field(-0.1, &cfg.material).is_err());
    }

    #[test]
    fn equilibrium_zero_voltage() {
        let cfg = defaults();
        let s = solve_equilibrium(0.0, &cfg).unwrap();
        assert_eq!(s.gap, cfg.device.initial_gap);
        assert_eq!(s.surface_potential, 0.0);
        assert!(s.stable);
    }

    #[test]
    fn equilibrium_brackets_pullin() {
        let cfg = defaults();
        let pi = find_pullin(&cfg).unwrap();
        let below = solve_equilibrium(0.999 * pi.v_pi, &cfg).unwrap();
        assert!(below.stable);
        assert!(below.gap < cfg.device.initial_gap);
        match solve_equilibrium(1.05 * pi.v_pi, &cfg) {
            Err(Error::PullInExceeded { .. }) => {}
            other => panic!("expected PullInExceeded, got {other:?}"),
        }
    }

    #[test]
    fn equilibrium_residuals_tight() {
        let cfg = defaults();
        let pi = find_pullin(&cfg).unwrap();
        for frac in [0.2, 0.5, 0.8, 0.95] {
            let vg = frac * pi.v_pi;
            let s = solve_equilibrium(vg, &cfg).unwrap();
            let spring = s.stiffness * (cfg.device.initial_gap - s.gap);
            let elec = force_electrostatic(s.gap, vg, &cfg.device).unwrap();
            assert!((spring - elec).abs() / spring.max(elec) < 1e-10);
            let v_back = gate_voltage_of_psi(s.surface_potential, s.gap, &cfg).unwrap();
            assert!((v_back - vg).abs() / vg < 1e-10);
        }
    }

    #[test]
    fn planar_pullin_matches_parallel_plate_oracle() {
        let cfg = defaults();
        let k = stiffness_array(
            stiffness_single(&cfg.device, &cfg.material),
            cfg.device.array_count,
        );
        let y0 = cfg.device.initial_gap;
        let a_e = cfg.device.effective_electrode_area;
        let v_oracle = (8.0 * k * y0.powi(3) / (27.0 * EPS_0 * a_e)).sqrt();
        let pi = find_pullin_with(&cfg, Electrode::Planar).unwrap();
        assert!(
            (pi.v_pi - v_oracle).abs() / v_oracle < 0.02,
            "V_PI = {} vs oracle {}",
            pi.v_pi,
            v_oracle
        );
        assert!((pi.y_pi - 2.0 * y0 / 3.0).abs() / (2.0 * y0 / 3.0) < 0.01);
    }

    #[test]
    fn pullin_increases_with_stiffness() {
        let cfg = defaults();
        let pi = find_pullin(&cfg).unwrap();
        let mut stiff = cfg.clone();
        stiff.device.array_count *= 4;
        // keep the electrode geometry identical so only k changes
        stiff.device.effective_electrode_area = cfg.device.effective_electrode_area;
        let pi4 = find_pullin(&stiff).unwrap();
        assert!(pi4.v_pi > pi.v_pi);
    }

    #[test]
    fn pullin_nondecreasing_in_initial_gap() {
        let mut last = 0.0;
        for y0 in [60e-9, 100e-9, 180e-9, 320e-9] {
            let mut cfg = defaults();
            cfg.device.initial_gap = y0;
            let pi = find_pullin(&cfg).unwrap();
            assert!(pi.v_pi >= last, "V_PI fell when y0 grew to {y0:e}");
            last = pi.v_pi;
        }
    }

    #[test]
    fn bias_selection_contract() {
        let cfg = defaults();
        assert!(select_bias(&cfg, 0.0).is_err());
        assert!(select_bias(&cfg, 1.0).is_err());
        let (at_half, _) = select_bias(&cfg, 0.5).unwrap();
        let (at_deep, _) = select_bias(&cfg, 0.9).unwrap();
        assert!(at_deep.stable);
        let y0 = cfg.device.initial_gap;
        assert!(y0 - at_deep.gap > y0 - at_half.gap);
    }
}
