//! Equilibrium ligand–receptor statistics at the receiver surface, plus a
//! stochastic telegraph-process oracle used to validate them.
//!
//! Receptors are independent two-state (bound/unbound) processes with
//! association rate k1·ρ_R and dissociation rate k₋₁. The number of bound
//! receptors is binomial; its fluctuation spectrum is a Lorentzian with
//! corner 1/(2πτ_B).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::SystemConfig;
use crate::error::{Error, Result};

/// Per-symbol occupancy statistics.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BindingStats {
    /// Steady-state single-receptor occupancy probability.
    pub p_on: f64,
    /// Receptor count N_R = ρ_SR · A_eff.
    pub n_receptors: f64,
    /// Mean bound receptors μ_NB = P_on · N_R.
    pub mean_bound: f64,
    /// Variance of bound receptors σ²_NB = P_on(1 − P_on) · N_R.
    pub var_bound: f64,
    /// Relaxation time τ_B = 1/(k1·ρ_R + k₋₁) [s].
    pub relaxation_time: f64,
    /// Dissociation constant K_D = k₋₁/k1 [m⁻³].
    pub k_d: f64,
}

/// Equilibrium binomial statistics at received concentration `rho_r`.
pub fn binding_stats(rho_r: f64, cfg: &SystemConfig) -> Result<BindingStats> {
    if rho_r.is_nan() || rho_r < 0.0 {
        return Err(Error::Domain {
            context: "binding_stats",
            detail: format!("rho_R = {rho_r} must be >= 0"),
        });
    }
    let k_d = cfg.k_d();
    let p_on = if rho_r == 0.0 {
        0.0
    } else {
        rho_r / (rho_r + k_d)
    };
    let n_receptors = cfg.n_receptors();
    Ok(BindingStats {
        p_on,
        n_receptors,
        mean_bound: p_on * n_receptors,
        var_bound: p_on * (1.0 - p_on) * n_receptors,
        relaxation_time: 1.0 / (cfg.ligand.binding_rate * rho_r + cfg.ligand.unbinding_rate),
        k_d,
    })
}

/// Output of the Monte Carlo telegraph oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct BindingOracleResult {
    /// Time-averaged total occupancy.
    pub sample_mean: f64,
    /// Time variance of total occupancy.
    pub sample_var: f64,
    /// Standard error of `sample_mean` from segment batch means.
    pub mean_std_err: f64,
    /// PSD bin frequencies [Hz] (two-sided convention, positive bins).
    pub frequencies: Vec<f64>,
    /// Welch-averaged PSD of total occupancy [1/Hz].
    pub psd: Vec<f64>,
    /// Sampling interval [s].
    pub dt: f64,
    /// Samples per Welch segment.
    pub segment_len: usize,
    /// Number of averaged segments.
    pub n_segments: usize,
}

const SEGMENT_LEN: usize = 16_384;
const N_SEGMENTS: usize = 128;
/// Samples per relaxation time; keeps the checked band well below Nyquist
/// so aliasing of the Lorentzian tail stays under a percent.
const SAMPLES_PER_TAU: f64 = 128.0;

/// Event-driven simulation of `n_receptors` independent telegraph processes
/// with rates on = k1·ρ_R and off = k₋₁, sampled on a uniform grid.
/// Deterministic for a fixed seed: receptor i draws from ChaCha stream i,
/// and the occupancy accumulator is integer-valued, so thread scheduling
/// cannot change the result.
pub fn mc_binding_oracle(
    rho_r: f64,
    cfg: &SystemConfig,
    n_receptors: usize,
    seed: u64,
) -> Result<BindingOracleResult> {
    if n_receptors < 1_000 {
        return Err(Error::Domain {
            context: "mc_binding_oracle",
            detail: format!("n_receptors = {n_receptors} must be >= 1e3"),
        });
    }
    let k_on = cfg.ligand.binding_rate * rho_r;
    let k_off = cfg.ligand.unbinding_rate;
    let tau = 1.0 / (k_on + k_off);
    let p_on = k_on / (k_on + k_off);
    let dt = tau / SAMPLES_PER_TAU;
    let total_samples = SEGMENT_LEN * N_SEGMENTS;
    let t_end = total_samples as f64 * dt;

    // per-receptor trajectories merged into one integer difference array
    let n_blocks = 256usize;
    let block = n_receptors.div_ceil(n_blocks);
    let diff: Vec<i64> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * block;
            let hi = ((b + 1) * block).min(n_receptors);
            let mut local = vec![0i64; total_samples + 1];
            for receptor in lo..hi {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(receptor as u64);
                walk_telegraph(&mut rng, p_on, k_on, k_off, dt, t_end, &mut local);
            }
            local
        })
        .reduce(
            || vec![0i64; total_samples + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    // prefix-sum into the sampled total-occupancy series
    let mut series = Vec::with_capacity(total_samples);
    let mut acc = 0i64;
    for &d in diff.iter().take(total_samples) {
        acc += d;
        series.push(acc as f64);
    }

    // moments
    let n = series.len() as f64;
    let sample_mean = series.iter().sum::<f64>() / n;
    let sample_var = series
        .iter()
        .map(|x| (x - sample_mean).powi(2))
        .sum::<f64>()
        / n;

    // batch means over segments give the standard error of the mean
    let seg_means: Vec<f64> = series
        .chunks(SEGMENT_LEN)
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect();
    let seg_mean = seg_means.iter().sum::<f64>() / seg_means.len() as f64;
    let seg_var = seg_means
        .iter()
        .map(|m| (m - seg_mean).powi(2))
        .sum::<f64>()
        / (seg_means.len() - 1) as f64;
    let mean_std_err = (seg_var / seg_means.len() as f64).sqrt();

    // Welch periodogram, rectangular window, per-segment mean removal,
    // two-sided normalization P_k = |X_k|^2 dt / N
    let half = SEGMENT_LEN / 2;
    let mut psd = vec![0.0f64; half - 1];
    let mut re = vec![0.0f64; SEGMENT_LEN];
    let mut im = vec![0.0f64; SEGMENT_LEN];
    for seg in series.chunks(SEGMENT_LEN) {
        let mean = seg.iter().sum::<f64>() / seg.len() as f64;
        for (j, &x) in seg.iter().enumerate() {
            re[j] = x - mean;
            im[j] = 0.0;
        }
        fft_in_place(&mut re, &mut im);
        for k in 1..half {
            psd[k - 1] += (re[k] * re[k] + im[k] * im[k]) * dt / SEGMENT_LEN as f64;
        }
    }
    for p in &mut psd {
        *p /= N_SEGMENTS as f64;
    }
    let frequencies: Vec<f64> = (1..half)
        .map(|k| k as f64 / (SEGMENT_LEN as f64 * dt))
        .collect();

    Ok(BindingOracleResult {
        sample_mean,
        sample_var,
        mean_std_err,
        frequencies,
        psd,
        dt,
        segment_len: SEGMENT_LEN,
        n_segments: N_SEGMENTS,
    })
}

/// One receptor: stationary initial state, exponential dwell times, ON
/// intervals marked in the difference array (sample i covers time i·dt).
fn walk_telegraph(
    rng: &mut ChaCha8Rng,
    p_on: f64,
    k_on: f64,
    k_off: f64,
    dt: f64,
    t_end: f64,
    diff: &mut [i64],
) {
    let len = diff.len() - 1;
    let mut bound = rng.gen::<f64>() < p_on;
    let mut t = 0.0f64;
    while t < t_end {
        let rate = if bound { k_off } else { k_on };
        let dwell = -(1.0 - rng.gen::<f64>()).ln() / rate;
        let t_next = (t + dwell).min(t_end);
        if bound {
            let i0 = ((t / dt).ceil() as usize).min(len);
            let i1 = ((t_next / dt).ceil() as usize).min(len);
            if i1 > i0 {
                diff[i0] += 1;
                diff[i1] -= 1;
            }
        }
        t += dwell;
        bound = !bound;
    }
}

/// Iterative radix-2 FFT (in place). `re.len()` must be a power of two.
fn fft_in_place(re: &mut [f64], im: &mut [f64]) {
    let n = re.len();
    debug_assert!(n.is_power_of_two());
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 0..n - 1 {
        if i < j {
            re.swap(i, j);
            im.swap(i, j);
        }
        let mut m = n >> 1;
        while m >= 1 && j & m != 0 {
            j ^= m;
            m >>= 1;
        }
        j |= m;
    }
    let mut len = 2usize;
    while len <= n {
        let ang = -2.0 * std::f64::consts::PI / len as f64;
        let (w_re, w_im) = (ang.cos(), ang.sin());
        let mut i = 0;
        while i < n {
            let (mut cur_re, mut cur_im) = (1.0f64, 0.0f64);
            for k in 0..len / 2 {
                let (a, b) = (i + k, i + k + len / 2);
                let t_re = re[b] * cur_re - im[b] * cur_im;
                let t_im = re[b] * cur_im + im[b] * cur_re;
                re[b] = re[a] - t_re;
                im[b] = im[a] - t_im;
                re[a] += t_re;
                im[a] += t_im;
                let next_re = cur_re * w_re - cur_im * w_im;
                cur_im = cur_re * w_im + cur_im * w_re;
                cur_re = next_re;
            }
            i += len;
        }
        len <<= 1;
    }
}

/// Largest relative deviation between band-averaged `psd` and the
/// band-averaged theory over `n_bands` log bands spanning `[f_lo, f_hi]`.
pub fn max_band_relative_error<F>(
    frequencies: &[f64],
    psd: &[f64],
    theory: F,
    f_lo: f64,
    f_hi: f64,
    n_bands: usize,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let log_lo = f_lo.ln();
    let step = (f_hi / f_lo).ln() / n_bands as f64;
    let mut worst = 0.0f64;
    for b in 0..n_bands {
        let lo = (log_lo + step * b as f64).exp();
        let hi = (log_lo + step * (b + 1) as f64).exp();
        let mut sum_est = 0.0;
        let mut sum_theory = 0.0;
        let mut count = 0usize;
        for (f, p) in frequencies.iter().zip(psd) {
            if *f >= lo && *f < hi {
                sum_est += *p;
                sum_theory += theory(*f);
                count += 1;
            }
        }
        if count > 0 {
            let err = (sum_est / sum_theory - 1.0).abs();
            worst = worst.max(err);
        }
    }
    worst
}
