//! Adaptive quadrature for band-limited spectral integrals.

use crate::error::{Error, Result};

/// Adaptive Simpson integration of `f` on `[a, b]` to relative tolerance
/// `rel_tol` (with an absolute floor to terminate near-zero integrals).
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // coarse magnitude estimate for the absolute tolerance floor
    let scale = whole.abs().max((b - a) * fm.abs()).max(f64::MIN_POSITIVE);
    let tol = rel_tol * scale;
    let mut evals = 0usize;
    let value = simpson_step(f, a, b, fa, fm, fb, whole, tol, 60, &mut evals)?;
    Ok(value)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    evals: &mut usize,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    *evals += 2;
    if *evals > 4_000_000 {
        return Err(Error::Numeric(format!(
            "adaptive quadrature exceeded evaluation budget on [{a}, {b}]"
        )));
    }
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 {
        return Err(Error::Numeric(format!(
            "adaptive quadrature failed to converge on [{a}, {b}] (residual {delta:.3e})"
        )));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    let l = simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, evals)?;
    let r = simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, evals)?;
    Ok(l + r)
}

/// Integrate `f` over `[a, b]`, `0 < a < b`, in log space: the substitution
/// `u = ln f` turns 1/f and Lorentzian tails spanning many decades into
/// smooth integrands.
pub fn integrate_log_domain<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a > 0.0 && b > a) {
        return Err(Error::Numeric(format!(
            "log-domain quadrature needs 0 < a < b, got [{a}, {b}]"
        )));
    }
    let g = |u: f64| {
        let x = u.exp();
        f(x) * x
    };
    adaptive_simpson(&g, a.ln(), b.ln(), rel_tol)
}
