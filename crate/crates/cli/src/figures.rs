//! Canned sweep specs reproducing the reported parameter studies:
//! sensitivity versus ligand count, the noise PSD decomposition, the SNR
//! panels, and the capacity panels.
//!
//! The suite runs at 60% of pull-in. Deeper bias crosses the point where
//! the displacement term k·Δy stops dominating Δk·(y0 − y) in the
//! sensitivity exponent at the default parameter set, which inverts the
//! sensitivity-versus-N_m trend; the crossover sits near 0.8 of pull-in
//! for the ten-wire array and near 0.6 for the five-wire one, so 0.6 is
//! the deepest bias where every curve of the ligand-count study behaves.
//! The flow-velocity panel stays below ~0.3 mm/s, where dispersion begins
//! to outrun the shorter transit time and the received peak falls again.

use serde_json::json;

use crate::sweep::{lin_space, log_space, OutputKind, Overlay, SweepSpec};

/// Bias fraction the canned suite uses unless overridden.
pub const FIGURE_BIAS_FRACTION: f64 = 0.60;

fn overlay(key: &str, values: &[serde_json::Value]) -> Overlay {
    Overlay {
        key: key.to_string(),
        values: values.to_vec(),
    }
}

/// All canned figure specs.
pub fn all(bias_fraction: Option<f64>) -> Vec<SweepSpec> {
    let bias = bias_fraction.unwrap_or(FIGURE_BIAS_FRACTION);
    let spec = |name: &str,
                variable: &str,
                values: Vec<f64>,
                outputs: Vec<OutputKind>,
                overlays: Vec<Overlay>| SweepSpec {
        name: name.to_string(),
        variable: variable.to_string(),
        values,
        outputs,
        overlays,
        bias_fraction: bias,
    };

    let freq_grid = log_space(1e-4, 1e4, 129);
    let n_array_pair = [json!(5), json!(10)];
    let n_array_wide = [json!(5), json!(15)];
    let distances = [json!(1e-3), json!(1e-2)];

    vec![
        // sensitivity vs transmitted ligands for two array sizes and two distances
        spec(
            "fig6",
            "N_m",
            log_space(1e6, 1e12, 25),
            vec![OutputKind::Sensitivity],
            vec![overlay("N_array", &n_array_pair), overlay("d", &distances)],
        ),
        // noise PSD decomposition over the band
        spec(
            "fig7",
            "f",
            freq_grid.clone(),
            vec![OutputKind::NoisePsd],
            vec![],
        ),
        // total noise PSD vs frequency for several ligand counts
        spec(
            "fig8",
            "f",
            freq_grid,
            vec![OutputKind::NoisePsd],
            vec![overlay("N_m", &[json!(1e7), json!(1e9), json!(1e11)])],
        ),
        // SNR panels
        spec(
            "fig9a",
            "N_m",
            log_space(1e6, 1e15, 28),
            vec![OutputKind::Snr],
            vec![],
        ),
        spec(
            "fig9b",
            "d",
            log_space(1e-3, 1e-1, 21),
            vec![OutputKind::Snr],
            vec![],
        ),
        spec(
            "fig9c",
            "u",
            log_space(1e-6, 1e-4, 21),
            vec![OutputKind::Snr],
            vec![],
        ),
        spec(
            "fig9d",
            "k1",
            log_space(1e-18, 1e-14, 21),
            vec![OutputKind::Snr],
            vec![],
        ),
        spec(
            "fig9e",
            "rho_SR",
            log_space(1e16, 1e20, 21),
            vec![OutputKind::Snr],
            vec![],
        ),
        spec(
            "fig9f",
            "N_ot",
            log_space(1e28, 1e32, 21),
            vec![OutputKind::Snr],
            vec![],
        ),
        spec(
            "fig9g",
            "R",
            lin_space(5e-9, 40e-9, 15),
            vec![OutputKind::Snr],
            vec![],
        ),
        // capacity panels, small vs large array
        spec(
            "fig10a",
            "n_tx_max",
            log_space(1e7, 1e12, 21),
            vec![OutputKind::Capacity],
            vec![overlay("N_array", &n_array_wide)],
        ),
        spec(
            "fig10b",
            "d",
            log_space(1e-3, 1e-1, 21),
            vec![OutputKind::Capacity],
            vec![overlay("N_array", &n_array_wide)],
        ),
        spec(
            "fig10c",
            "k1",
            log_space(1e-18, 1e-14, 21),
            vec![OutputKind::Capacity],
            vec![overlay("N_array", &n_array_wide)],
        ),
        spec(
            "fig10d",
            "rho_SR",
            log_space(1e16, 1e20, 21),
            vec![OutputKind::Capacity],
            vec![overlay("N_array", &n_array_wide)],
        ),
    ]
}
