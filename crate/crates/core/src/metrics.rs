//! Per-symbol SNR and closed-form channel capacity.
//!
//! The capacity treats the link as a continuous-input memoryless channel
//! with Gaussian output noise; the closed form takes the flicker variance
//! only, with the binding signal entering through the transduction factor
//! L. The paper's capacity symbol collides with the nanowire length, so it
//! is named `l_factor` here.

use serde::Serialize;

use crate::channel::ChannelState;
use crate::config::SystemConfig;
use crate::error::{Error, Result};
use crate::noise::NoiseSpectrum;
use crate::transducer::TransductionResult;

/// SNR and capacity outputs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LinkMetrics {
    /// Output SNR μ_I²/σ²_I (linear).
    pub snr: f64,
    /// SNR in dB.
    pub snr_db: f64,
    /// Channel capacity [bits per channel use], clamped at 0.
    pub capacity_bits: f64,
    /// Transduction/noise factor L ∈ [0, 1].
    pub l_factor: f64,
    /// Pre-clamp capacity [bits]; can be negative or −∞ for a closed link.
    pub raw_capacity_bits: f64,
}

/// Output SNR for one symbol: μ_I²/σ²_I.
pub fn snr(mean_current: f64, var_current: f64) -> Result<f64> {
    if var_current <= 0.0 {
        return Err(Error::Domain {
            context: "snr",
            detail: format!("current variance {var_current} must be > 0"),
        });
    }
    Ok(mean_current * mean_current / var_current)
}

/// 10·log10 of a linear ratio.
pub fn to_db(ratio: f64) -> f64 {
    10.0 * ratio.log10()
}

/// Transduction factor L = √(g²ψ_L²N_r / (4σ_F² + g²ψ_L²N_r)).
pub fn l_factor(g_fet: f64, psi_l: f64, n_receptors: f64, var_flicker: f64) -> f64 {
    let signal = g_fet * g_fet * psi_l * psi_l * n_receptors;
    let denom = 4.0 * var_flicker + signal;
    if denom == 0.0 {
        0.0
    } else {
        (signal / denom).sqrt()
    }
}

/// Closed-form capacity from its scalar parts:
/// C_raw = ½·log₂(N_r/(2πe))
///       + log₂[asin(L·x(N_max)) − asin(L·x(N_min))],
/// x(N) = (N − K_D/β_ch)/(N + K_D/β_ch); capacity = max(C_raw, 0).
pub fn capacity_from_parts(
    l: f64,
    k_d_over_beta: f64,
    n_tx_min: f64,
    n_tx_max: f64,
    n_receptors: f64,
) -> Result<(f64, f64)> {
    if n_tx_max == n_tx_min {
        return Err(Error::DegenerateRange(format!(
            "N_tx_max = N_tx_min = {n_tx_max}"
        )));
    }
    if !(n_tx_max > n_tx_min && n_tx_min >= 0.0) {
        return Err(Error::Domain {
            context: "capacity",
            detail: format!("need N_tx_max > N_tx_min >= 0, got [{n_tx_min}, {n_tx_max}]"),
        });
    }
    if n_receptors < 1.0 {
        return Err(Error::Domain {
            context: "capacity",
            detail: format!("N_r = {n_receptors} must be >= 1"),
        });
    }
    let arg = |n: f64| -> Result<f64> {
        let x = (n - k_d_over_beta) / (n + k_d_over_beta);
        let a = l * x;
        if a.abs() > 1.0 + 1e-12 {
            return Err(Error::Numeric(format!(
                "asin argument {a} outside [-1, 1] at N = {n}"
            )));
        }
        Ok(a.clamp(-1.0, 1.0))
    };
    let asin_diff = arg(n_tx_max)?.asin() - arg(n_tx_min)?.asin();
    let raw = 0.5 * (n_receptors / (2.0 * std::f64::consts::PI * std::f64::consts::E)).log2()
        + asin_diff.log2();
    Ok((raw, raw.max(0.0)))
}

/// SNR plus capacity for one evaluated operating point.
pub fn link_metrics(
    cfg: &SystemConfig,
    chan: &ChannelState,
    trans: &TransductionResult,
    noise: &NoiseSpectrum,
) -> Result<LinkMetrics> {
    let snr_lin = snr(trans.mean_current, noise.var_total)?;
    let n_r = cfg.n_receptors();
    let l = l_factor(trans.g_fet, trans.psi_l, n_r, noise.var_flicker);
    let (raw, clamped) =
        capacity_from_parts(l, cfg.k_d() / chan.beta_ch, cfg.n_tx_min, cfg.n_tx_max, n_r)?;
    Ok(LinkMetrics {
        snr: snr_lin,
        snr_db: to_db(snr_lin),
        capacity_bits: clamped,
        l_factor: l,
        raw_capacity_bits: raw,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snr_definitional_cases() {
        assert_eq!(snr(0.0, 1e-20).unwrap(), 0.0);
        let s = snr(1e-9, 1e-20).unwrap();
        assert!((s - 100.0).abs() < 1e-9);
        assert!((to_db(s) - 20.0).abs() < 1e-9);
        assert!(snr(1e-9, 0.0).is_err());
    }

    #[test]
    fn l_factor_bounds_and_monotonicity() {
        let l0 = l_factor(1e-6, 1e-4, 1e7, 0.0);
        assert!((l0 - 1.0).abs() < 1e-15);
        let mut last = 1.0;
        for i in 1..20 {
            let l = l_factor(1e-6, 1e-4, 1e7, 10f64.powi(i - 30));
            assert!(l <= last && l >= 0.0);
            last = l;
        }
        assert_eq!(l_factor(0.0, 0.0, 1e7, 0.0), 0.0);
    }

    #[test]
    fn capacity_analytic_point() {
        // L = 1, K_D/beta = 1, N_min = 0, N_max -> inf, N_r = 2*pi*e:
        // asin(1) - asin(-1) = pi, so C = log2(pi)
        let n_r = 2.0 * std::f64::consts::PI * std::f64::consts::E;
        let (raw, c) = capacity_from_parts(1.0, 1.0, 0.0, 1e18, n_r).unwrap();
        let expect = std::f64::consts::PI.log2();
        assert!(
            (raw - expect).abs() < 1e-6,
            "raw = {raw}, expect = {expect}"
        );
        assert!((c - 1.651).abs() < 1e-3);
    }

    #[test]
    fn vanishing_l_clamps_to_zero() {
        let (raw, c) = capacity_from_parts(0.0, 1.0, 0.0, 1e12, 1e7).unwrap();
        assert!(raw.is_infinite() && raw < 0.0);
        assert_eq!(c, 0.0);
    }

    #[test]
    fn degenerate_range_rejected() {
        match capacity_from_parts(1.0, 1.0, 1e6, 1e6, 1e7) {
            Err(Error::DegenerateRange(_)) => {}
            other => panic!("expected DegenerateRange, got {other:?}"),
        }
    }

    #[test]
    fn capacity_monotone_in_n_tx_max() {
        let mut last = f64::NEG_INFINITY;
        for exp in 7..=13 {
            let (_, c) = capacity_from_parts(0.9, 898.0, 1e6, 10f64.powi(exp), 1e7).unwrap();
            assert!(c >= last);
            last = c;
        }
    }

    #[test]
    fn asin_arguments_in_range_for_nonnegative_counts() {
        for &l in &[0.0, 0.3, 0.9999, 1.0] {
            for exp in 0..=14 {
                let n = 10f64.powi(exp);
                let (raw, c) = capacity_from_parts(l, 898.0, 0.0, n.max(1.0) * 10.0, 1e7).unwrap();
                assert!(c >= 0.0);
                assert!(raw.is_finite() || raw == f64::NEG_INFINITY);
            }
        }
    }
}
