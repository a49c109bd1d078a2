//! Jump conditions and the double-Riemann weak solution.
//!
//! Across a shock moving at `ẋ_s` both `η` and `ηu` are conserved, giving two
//! expressions for the speed:
//!
//! ```text
//! ẋ_s = [ηu]/[η] = [ηu² + η²/2]/[ηu]
//! ```
//!
//! They agree iff `[u]² = [η]²(η₊ + η₋)/(2η₊η₋)`.

use crate::math::sqrt;
use crate::roots::{expand_upper, newton_bracketed, Tolerance};
use crate::{Error, Result};

/// States on the two sides of a shock (`−` left, `+` right).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockSides {
    /// Elevation on the left.
    pub eta_minus: f64,
    /// Velocity on the left.
    pub u_minus: f64,
    /// Elevation on the right.
    pub eta_plus: f64,
    /// Velocity on the right.
    pub u_plus: f64,
}

impl ShockSides {
    /// Mirror image under `x → −x`, `u → −u`.
    pub fn mirrored(&self) -> Self {
        ShockSides { eta_minus: self.eta_plus, u_minus: -self.u_plus, eta_plus: self.eta_minus, u_plus: -self.u_minus }
    }

    fn check_vacuum(&self) -> Result<()> {
        let scale = self.eta_minus.abs().max(self.eta_plus.abs());
        if !(self.eta_minus > 1e-14 * scale && self.eta_plus > 1e-14 * scale) {
            return Err(Error::Vacuum);
        }
        Ok(())
    }
}

/// Mass-flux form of the shock speed, `[ηu]/[η]`.
pub fn shock_speed(sides: &ShockSides) -> Result<f64> {
    sides.check_vacuum()?;
    let d_eta = sides.eta_plus - sides.eta_minus;
    if d_eta == 0.0 {
        return Err(Error::DegenerateJump);
    }
    Ok((sides.eta_plus * sides.u_plus - sides.eta_minus * sides.u_minus) / d_eta)
}

/// Momentum-flux form of the shock speed, `[ηu² + η²/2]/[ηu]`.
pub fn momentum_shock_speed(sides: &ShockSides) -> Result<f64> {
    sides.check_vacuum()?;
    let flux = |eta: f64, u: f64| eta * u * u + 0.5 * eta * eta;
    let dm = sides.eta_plus * sides.u_plus - sides.eta_minus * sides.u_minus;
    if dm == 0.0 {
        return Err(Error::DegenerateJump);
    }
    Ok((flux(sides.eta_plus, sides.u_plus) - flux(sides.eta_minus, sides.u_minus)) / dm)
}

/// `[u]² − [η]²(η₊ + η₋)/(2η₊η₋)`; zero iff both speed forms agree.
pub fn jump_consistency_residual(sides: &ShockSides) -> f64 {
    let du = sides.u_plus - sides.u_minus;
    let de = sides.eta_plus - sides.eta_minus;
    let (ep, em) = (sides.eta_plus, sides.eta_minus);
    du * du - de * de * (ep + em) / (2.0 * ep * em)
}

/// Elevation behind a shock that stops a simple-wave state `(N, 2√N − 2√Q)`.
///
/// This is the root `η > N` of `(η − N)²(η + N) = 2ηN(2√N − 2√Q)²`; for
/// `N = Q/4` it is the cubic `η³ − Qη²/4 − 9Q²η/16 + Q³/64 = 0`.
pub fn qstar(n00: f64, q: f64) -> Result<f64> {
    if !(n00 > 0.0 && q > 0.0) {
        return Err(Error::Domain("qstar needs positive elevations"));
    }
    let v = 2.0 * sqrt(n00) - 2.0 * sqrt(q);
    let w = 2.0 * n00 * v * v;
    if w == 0.0 {
        return Err(Error::DegenerateJump);
    }
    let f = |e: f64| {
        let d = e - n00;
        (d * d * (e + n00) - w * e, 2.0 * d * (e + n00) + d * d - w)
    };
    let hi = if (n00 - 0.25 * q).abs() <= 1e-15 * q {
        4.0 * q
    } else {
        expand_upper(|e| f(e).0, n00, 2.0 * n00.max(q), 200)?
    };
    newton_bracketed(f, n00, hi, Some(hi), Tolerance::default())
}

/// Inner elevation `Q*` of the collapsed parabola, `qstar(Q/4, Q)`.
pub fn qstar_of(q: f64) -> Result<f64> {
    qstar(0.25 * q, q)
}

/// Speed of the shocks leaving the collapse, `s0 = Q^{3/2}/(4Q* − Q)`.
pub fn initial_shock_speed(q: f64) -> Result<f64> {
    let qs = qstar_of(q)?;
    Ok(q * sqrt(q) / (4.0 * qs - q))
}

/// Right-moving shock of the collapse: inner state `(Q*, 0)`, outer `(Q/4, −√Q)`.
pub fn collapse_sides(q: f64) -> Result<ShockSides> {
    Ok(ShockSides { eta_minus: qstar_of(q)?, u_minus: 0.0, eta_plus: 0.25 * q, u_plus: -sqrt(q) })
}

/// Lax admissibility: `λ₊(left) > ẋ_s > λ₊(right)` and `λ₋(left) < ẋ_s`
/// for a right-facing (1-)shock, or the mirrored ordering for a left-facing one.
pub fn lax_conditions(sides: &ShockSides) -> Result<bool> {
    let s = shock_speed(sides)?;
    let lp = |e: f64, u: f64| u + sqrt(e);
    let lm = |e: f64, u: f64| u - sqrt(e);
    let (em, um, ep, up) = (sides.eta_minus, sides.u_minus, sides.eta_plus, sides.u_plus);
    let plus_shock = lp(em, um) > s && s > lp(ep, up) && lm(ep, up) < s;
    let minus_shock = lm(em, um) > s && s > lm(ep, up) && lp(em, um) > s;
    Ok(plus_shock || minus_shock)
}

/// The double-Riemann solution: a compressive wedge collapsing at `t_c`,
/// followed by two shocks leaving the origin at `±s0`.
pub fn double_riemann_solution(x: f64, t: f64, q: f64, tc: f64) -> Result<(f64, f64)> {
    let sq = sqrt(q);
    let sgn = if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    };
    if t < tc {
        let dt = tc - t;
        let a = 1.5 * sq * dt;
        if x.abs() >= a {
            return Ok((0.25 * q, -sgn * sq));
        }
        let r = x / dt;
        return Ok((r * r / 9.0, -2.0 * r / 3.0));
    }
    let xs = initial_shock_speed(q)? * (t - tc);
    if x.abs() < xs || (x == 0.0) {
        Ok((qstar_of(q)?, 0.0))
    } else {
        Ok((0.25 * q, -sgn * sq))
    }
}
