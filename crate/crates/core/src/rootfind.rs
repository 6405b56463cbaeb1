//! Bracketed scalar root finding (derivative-free).
//!
//! The equilibrium solvers use nested bracketed solves instead of a 2-D
//! Newton iteration: the inner map is monotone and the brackets are known,
//! so convergence is guaranteed without Jacobian tuning.

use crate::error::{Error, Result};

/// Brent's method on `[a, b]` with `f(a)` and `f(b)` of opposite sign.
///
/// Iterates until the bracket collapses to `xtol` (absolute) or `f` hits
/// exactly zero. With `xtol` of a few ULPs the residual ends up at the
/// floating-point noise floor of `f`.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64, context: &'static str) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    brent_with(&mut f, a, b, fa, fb, xtol, context)
}

/// Brent's method when the endpoint values are already available.
pub fn brent_with<F>(
    f: &mut F,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    mut fb: f64,
    xtol: f64,
    context: &'static str,
) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFind {
            context,
            detail: format!("no sign change on [{a}, {b}]: f = ({fa}, {fb})"),
        });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            // b is the best estimate; keep it that way
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() < tol || fa.abs() <= fb.abs() {
            d = m;
            e = m;
        } else {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                // secant
                (2.0 * m * s, 1.0 - s)
            } else {
                // inverse quadratic interpolation
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q0 * (q0 - r) - (b - a) * (r - 1.0)),
                    (q0 - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    Err(Error::RootFind {
        context,
        detail: format!("iteration limit near x = {b}"),
    })
}

/// Scan `[lo, hi]` from `lo` upward on a uniform grid and return the first
/// bracket `(x_left, x_right, f_left, f_right)` where `f` changes sign.
/// Used to isolate the smallest-deflection root of the force balance.
pub fn scan_up_for_bracket<F>(
    f: &mut F,
    lo: f64,
    hi: f64,
    steps: usize,
) -> Option<(f64, f64, f64, f64)>
where
    F: FnMut(f64) -> f64,
{
    let dx = (hi - lo) / steps as f64;
    let mut x_left = lo;
    let mut f_left = f(x_left);
    if f_left == 0.0 {
        return Some((x_left, x_left, 0.0, 0.0));
    }
    for i in 1..=steps {
        let x_right = lo + dx * i as f64;
        let f_right = f(x_right);
        if f_right == 0.0 || f_right.signum() != f_left.signum() {
            return Some((x_left, x_right, f_left, f_right));
        }
        x_left = x_right;
        f_left = f_right;
    }
    None
}
