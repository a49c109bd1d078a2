//! Bracketed, safeguarded Newton iteration for scalar equations.
//!
//! Every implicit relation in the crate (time reparameterization, shoulder
//! launch parameter, the `Q*` cubic) is monotone on a known interval, so the
//! solver keeps a sign-changing bracket and falls back to bisection whenever a
//! Newton step would leave it or fails to halve the previous correction.

use crate::{Error, Result};

/// Tolerances for [`newton_bracketed`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    /// Stop when the correction is below `abs + rel * |x|`.
    pub abs: f64,
    /// Relative part of the step tolerance.
    pub rel: f64,
    /// Iteration cap.
    pub max_iter: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 0.0, rel: 4.0 * f64::EPSILON, max_iter: 200 }
    }
}

/// Solves `f(x) = 0` on `[lo, hi]`. `f` returns the value and the derivative.
///
/// `guess` seeds the first Newton step; the midpoint is used otherwise. A
/// non-finite derivative simply forces a bisection step.
pub fn newton_bracketed<F>(mut f: F, lo: f64, hi: f64, guess: Option<f64>, tol: Tolerance) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (flo, _) = f(lo);
    if flo == 0.0 {
        return Ok(lo);
    }
    let (fhi, _) = f(hi);
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(Error::NoBracket);
    }
    // keep f(neg) < 0 < f(pos)
    let (mut neg, mut pos) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };

    let mut x = match guess {
        Some(g) if g > lo.min(hi) && g < lo.max(hi) => g,
        _ => 0.5 * (lo + hi),
    };
    let mut step_old = (hi - lo).abs();
    let mut step = step_old;
    let (mut fx, mut dfx) = f(x);

    for _ in 0..tol.max_iter {
        if fx == 0.0 {
            return Ok(x);
        }
        let newton_leaves = {
            let a = (x - pos) * dfx - fx;
            let b = (x - neg) * dfx - fx;
            !dfx.is_finite() || dfx == 0.0 || a * b > 0.0
        };
        if newton_leaves || (2.0 * fx).abs() > (step_old * dfx).abs() {
            step_old = step;
            step = 0.5 * (pos - neg);
            x = neg + step;
        } else {
            step_old = step;
            step = fx / dfx;
            x -= step;
        }
        if step.abs() <= tol.abs + tol.rel * x.abs() {
            return Ok(x);
        }
        let eval = f(x);
        fx = eval.0;
        dfx = eval.1;
        if !fx.is_finite() {
            return Err(Error::NoConvergence { iterations: 0 });
        }
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
    }
    Err(Error::NoConvergence { iterations: tol.max_iter })
}

/// Doubles `hi` (starting from `start`) until `f(hi)` changes sign relative to
/// `f(lo)`. Returns the first such `hi`.
pub fn expand_upper<F>(mut f: F, lo: f64, start: f64, max_doublings: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let flo = f(lo);
    let mut hi = start;
    for _ in 0..max_doublings {
        let fhi = f(hi);
        if fhi == 0.0 || fhi.signum() != flo.signum() {
            return Ok(hi);
        }
        hi *= 2.0;
    }
    Err(Error::NoBracket)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = newton_bracketed(|x| (x * x - 2.0, 2.0 * x), 0.0, 2.0, None, Tolerance::default()).unwrap();
        assert!((r - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn survives_flat_derivative() {
        // f'(0) = 0 at the bracket end; x^3 - 1e-9 needs bisection early on.
        let r =
            newton_bracketed(|x| (x * x * x - 1e-9, 3.0 * x * x), 0.0, 1.0, Some(0.0), Tolerance::default()).unwrap();
        assert!((r - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn rejects_missing_bracket() {
        let r = newton_bracketed(|x| (x * x + 1.0, 2.0 * x), -1.0, 1.0, None, Tolerance::default());
        assert_eq!(r, Err(Error::NoBracket));
    }

    #[test]
    fn infinite_derivative_falls_back_to_bisection() {
        // sqrt(x) - 0.5 has an infinite slope at 0
        let r =
            newton_bracketed(|x| (libm::sqrt(x) - 0.5, 0.5 / libm::sqrt(x)), 0.0, 1.0, Some(0.0), Tolerance::default())
                .unwrap();
        assert!((r - 0.25).abs() < 1e-15);
    }

    #[test]
    fn doubling_bracket() {
        let hi = expand_upper(|x| x - 100.0, 1.0, 2.0, 20).unwrap();
        assert_eq!(hi, 128.0);
    }
}
