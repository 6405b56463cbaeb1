//! One-call evaluation of the whole receive chain at a bias point.

use serde::Serialize;

use crate::binding::{binding_stats, BindingStats};
use crate::channel::{channel_state, ChannelState};
use crate::config::SystemConfig;
use crate::electromech::{select_bias, EquilibriumState, PullInPoint};
use crate::error::Result;
use crate::metrics::{link_metrics, LinkMetrics};
use crate::noise::{total_noise, NoiseSpectrum};
use crate::transducer::{transduce, TransductionResult};

/// Everything the link produces at one operating point. The PSD grids are
/// omitted to keep sweeps light; use [`evaluate_with_spectrum`] when the
/// spectrum itself is wanted.
#[derive(Debug, Clone, Serialize)]
pub struct LinkReport {
    pub pullin: PullInPoint,
    pub bias: EquilibriumState,
    pub channel: ChannelState,
    pub binding: BindingStats,
    pub transduction: TransductionResult,
    /// Band-limited total current variance σ²_I [A²].
    pub var_total: f64,
    /// Band-limited flicker variance σ²_F [A²].
    pub var_flicker: f64,
    pub metrics: LinkMetrics,
}

/// Run the full chain at V_G = bias_fraction · V_PI.
pub fn evaluate(cfg: &SystemConfig, bias_fraction: f64) -> Result<LinkReport> {
    evaluate_with_spectrum(cfg, bias_fraction).map(|(report, _)| report)
}

/// Run the full chain and keep the evaluated noise spectrum.
pub fn evaluate_with_spectrum(
    cfg: &SystemConfig,
    bias_fraction: f64,
) -> Result<(LinkReport, NoiseSpectrum)> {
    let (bias, pullin) = select_bias(cfg, bias_fraction)?;
    let chan = channel_state(cfg)?;
    let stats = binding_stats(chan.rho_r, cfg)?;
    let trans = transduce(stats.mean_bound, &bias, cfg)?;
    let spectrum = total_noise(&stats, &trans, &bias, cfg)?;
    let metrics = link_metrics(cfg, &chan, &trans, &spectrum)?;
    Ok((
        LinkReport {
            pullin,
            bias,
            channel: chan,
            binding: stats,
            transduction: trans,
            var_total: spectrum.var_total,
            var_flicker: spectrum.var_flicker,
            metrics,
        },
        spectrum,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_chain_is_finite_and_consistent() {
        let cfg = SystemConfig::default();
        let report = evaluate(&cfg, 0.9).unwrap();
        assert!(report.bias.stable);
        assert!(report.bias.gap < cfg.device.initial_gap);
        assert!(report.channel.rho_r > 0.0);
        assert!(report.binding.p_on > 0.0 && report.binding.p_on <= 1.0);
        assert!(report.transduction.sensitivity.is_finite());
        assert!(report.var_total > 0.0);
        assert!(report.metrics.snr > 0.0 && report.metrics.snr.is_finite());
        assert!(report.metrics.capacity_bits >= 0.0);
        assert!(report.metrics.l_factor >= 0.0 && report.metrics.l_factor <= 1.0);
    }

    #[test]
    fn spectrum_variant_matches_report() {
        let cfg = SystemConfig::default();
        let (report, spectrum) = evaluate_with_spectrum(&cfg, 0.9).unwrap();
        assert_eq!(report.var_total, spectrum.var_total);
        assert_eq!(report.var_flicker, spectrum.var_flicker);
    }
}
