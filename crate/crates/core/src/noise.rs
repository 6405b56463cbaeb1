//! Output-referred noise: binding (Lorentzian) and flicker (1/f) current
//! PSDs, their superposition, and band-limited variances.
//!
//! Both PSDs use the two-sided convention; band variances are
//! σ² = 2·∫_{f_min}^{f_max} S df. The 1/f integral diverges on (−∞, ∞), so
//! the variance is always taken over the configured band (default
//! [1e-4, 1e4] Hz, the plotted frequency range); the band is carried in the
//! output so the convention is explicit.

use serde::Serialize;

use crate::binding::BindingStats;
use crate::config::SystemConfig;
use crate::consts::{K_B, Q_E};
use crate::electromech::EquilibriumState;
use crate::error::{Error, Result};
use crate::quad;
use crate::transducer::TransductionResult;

/// Minimum log-grid density for the evaluated spectrum.
const POINTS_PER_DECADE: f64 = 200.0;

/// Evaluated spectrum and band variances.
#[derive(Debug, Clone, Serialize)]
pub struct NoiseSpectrum {
    /// Log-spaced grid over the band [Hz], ≥ 200 points per decade.
    pub frequencies: Vec<f64>,
    /// Binding-noise current PSD on the grid [A²/Hz].
    pub s_ib: Vec<f64>,
    /// Flicker-noise current PSD on the grid [A²/Hz].
    pub s_if: Vec<f64>,
    /// Superposed PSD [A²/Hz].
    pub s_total: Vec<f64>,
    /// Band-limited total current variance σ²_I [A²].
    pub var_total: f64,
    /// Band-limited flicker variance σ²_F [A²].
    pub var_flicker: f64,
    /// Integration band (f_min, f_max) [Hz].
    pub band: (f64, f64),
}

/// Occupancy-fluctuation PSD: S_NB(f) = σ²_NB · 2τ_B / (1 + (2πfτ_B)²).
pub fn occupancy_psd(f: f64, stats: &BindingStats) -> f64 {
    let tau = stats.relaxation_time;
    stats.var_bound * 2.0 * tau / (1.0 + (2.0 * std::f64::consts::PI * f * tau).powi(2))
}

/// Current-referred binding noise: S_IB(f) = S_NB(f) · ψ_L² · g_FET².
pub fn binding_psd(f: f64, stats: &BindingStats, psi_l: f64, g_fet: f64) -> f64 {
    occupancy_psd(f, stats) * psi_l * psi_l * g_fet * g_fet
}

/// Frequency-independent flicker prefactor K with S_IF(f) = K/|f|:
/// K = λ·k_B·T·q²·N_ot·g_FET² / (w_R·l_R·C_ox²) ·
///     [1 + α_s·µ_p·C_ox·(V_G − |V_TH|)]².
pub fn flicker_prefactor(g_fet: f64, gate_voltage: f64, cfg: &SystemConfig) -> f64 {
    let fet = &cfg.fet;
    let c_ox = fet.oxide_capacitance_per_area;
    let bracket = 1.0
        + fet.scattering_coeff * fet.mobility * c_ox * (gate_voltage - fet.threshold_voltage.abs());
    fet.tunneling_distance
        * K_B
        * cfg.material.temperature
        * Q_E
        * Q_E
        * fet.oxide_trap_density
        * g_fet
        * g_fet
        / (fet.fet_channel_width * fet.fet_channel_length * c_ox * c_ox)
        * bracket
        * bracket
}

/// Flicker current PSD at f ≠ 0 [A²/Hz].
pub fn flicker_psd(f: f64, g_fet: f64, gate_voltage: f64, cfg: &SystemConfig) -> Result<f64> {
    if f == 0.0 {
        return Err(Error::Domain {
            context: "flicker_psd",
            detail: "1/f PSD undefined at f = 0".into(),
        });
    }
    Ok(flicker_prefactor(g_fet, gate_voltage, cfg) / f.abs())
}

/// Closed-form two-sided band integral of the binding PSD:
/// (2σ²_NB/π)·(arctan(2πf₂τ) − arctan(2πf₁τ)) · ψ_L²·g_FET².
pub fn binding_band_variance_closed(
    stats: &BindingStats,
    psi_l: f64,
    g_fet: f64,
    band: (f64, f64),
) -> f64 {
    let tau = stats.relaxation_time;
    let atan = |f: f64| (2.0 * std::f64::consts::PI * f * tau).atan();
    2.0 * stats.var_bound / std::f64::consts::PI
        * (atan(band.1) - atan(band.0))
        * psi_l
        * psi_l
        * g_fet
        * g_fet
}

/// Closed-form two-sided band integral of the flicker PSD: 2K·ln(f₂/f₁).
pub fn flicker_band_variance_closed(prefactor: f64, band: (f64, f64)) -> f64 {
    2.0 * prefactor * (band.1 / band.0).ln()
}

/// Evaluate both PSDs on a log grid over the configured band and integrate
/// the total. The quadratures are audited against the closed forms (arctan
/// for the Lorentzian, logarithm for 1/f); disagreement is a hard error.
pub fn total_noise(
    stats: &BindingStats,
    trans: &TransductionResult,
    bias: &EquilibriumState,
    cfg: &SystemConfig,
) -> Result<NoiseSpectrum> {
    let band = (cfg.fet.f_min, cfg.fet.f_max);
    let decades = (band.1 / band.0).log10();
    let n = (POINTS_PER_DECADE * decades).ceil() as usize;
    let frequencies: Vec<f64> = (0..=n)
        .map(|i| band.0 * 10f64.powf(decades * i as f64 / n as f64))
        .collect();

    let k_flicker = flicker_prefactor(trans.g_fet, bias.gate_voltage, cfg);
    let s_ib: Vec<f64> = frequencies
        .iter()
        .map(|&f| binding_psd(f, stats, trans.psi_l, trans.g_fet))
        .collect();
    let s_if: Vec<f64> = frequencies.iter().map(|&f| k_flicker / f).collect();
    let s_total: Vec<f64> = s_ib.iter().zip(&s_if).map(|(a, b)| a + b).collect();

    let binding_f = |f: f64| binding_psd(f, stats, trans.psi_l, trans.g_fet);
    let flicker_f = |f: f64| k_flicker / f;

    let var_binding_quad = 2.0 * quad::integrate_log_domain(binding_f, band.0, band.1, 1e-12)?;
    let var_flicker_quad = 2.0 * quad::integrate_log_domain(flicker_f, band.0, band.1, 1e-12)?;
    let var_total_quad =
        2.0 * quad::integrate_log_domain(|f| binding_f(f) + flicker_f(f), band.0, band.1, 1e-12)?;

    let closed_b = binding_band_variance_closed(stats, trans.psi_l, trans.g_fet, band);
    let closed_f = flicker_band_variance_closed(k_flicker, band);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(f64::MIN_POSITIVE);
    if closed_b > 0.0 && rel(var_binding_quad, closed_b) > 1e-8 {
        return Err(Error::Numeric(format!(
            "binding variance quadrature {var_binding_quad:.6e} vs arctan form {closed_b:.6e} \
             on band [{}, {}] Hz",
            band.0, band.1
        )));
    }
    if closed_f > 0.0 && rel(var_flicker_quad, closed_f) > 1e-10 {
        return Err(Error::Numeric(format!(
            "flicker variance quadrature {var_flicker_quad:.6e} vs log form {closed_f:.6e} \
             on band [{}, {}] Hz",
            band.0, band.1
        )));
    }
    if var_total_quad > 0.0 && rel(var_total_quad, var_binding_quad + var_flicker_quad) > 1e-9 {
        return Err(Error::Numeric(
            "total-noise quadrature inconsistent with its components".into(),
        ));
    }

    Ok(NoiseSpectrum {
        frequencies,
        s_ib,
        s_if,
        s_total,
        var_total: var_total_quad,
        var_flicker: var_flicker_quad,
        band,
    })
}
