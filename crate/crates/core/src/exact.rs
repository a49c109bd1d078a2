//! Closed-form solution before collapse.
//!
//! The truncated parabola `η = γ0 x² + μ0` (clipped at the background level
//! `Q`) keeps its shape: `η = γ(t) x² + μ(t)`, `u = ν(t) x` with
//!
//! ```text
//! γ = γ0 σ³,  μ = μ0 σ,  ν = −2√γ0 σ√(σ−1),
//! t(σ) = (√(σ−1) + σ atan√(σ−1)) / (2√γ0 σ),
//! ```
//!
//! and σ runs from 1 to ∞ as `t` runs from 0 to `t_c = π/(4√γ0)`. The edge
//! of the core follows the λ₋ characteristic from `a0`; outside it a simple
//! wave (the shoulder) fans out along straight λ₊ lines until the background.
//!
//! Internally σ is carried as an angle θ with `sin θ = σ^{-1/2}`. Then
//! `t_c − t(σ) = (2θ − sin 2θ)/(4√γ0)`, every edge quantity is a smooth
//! function of θ, and neither the start (σ → 1) nor the collapse (σ → ∞)
//! needs special treatment.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::dual::{Dual, Real};
use crate::math::{cbrt, pow_two_thirds, sqrt};
use crate::roots::{newton_bracketed, Tolerance};
use crate::{Error, Result};

/// Physical parameters shared by all initial-data families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    /// Background elevation.
    pub q: f64,
    /// Initial curvature of the parabola.
    pub gamma0: f64,
    /// Initial minimum of the parabola (0 for the dry case).
    pub mu0: f64,
    /// Curvature-like parameter of the double-Stoker data.
    pub g0: f64,
}

impl ScenarioParams {
    /// Validated constructor.
    pub fn new(q: f64, gamma0: f64, mu0: f64, g0: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::Domain("Q must be positive"));
        }
        if !(gamma0 > 0.0 && gamma0.is_finite()) {
            return Err(Error::Domain("gamma0 must be positive"));
        }
        if !(mu0 >= 0.0) {
            return Err(Error::Domain("mu0 must be non-negative"));
        }
        if mu0 > q {
            return Err(Error::Domain("mu0 must not exceed Q"));
        }
        if !(g0 > 0.0 && g0.is_finite()) {
            return Err(Error::Domain("g0 must be positive"));
        }
        Ok(ScenarioParams { q, gamma0, mu0, g0 })
    }

    /// Dry parabola (`μ0 = 0`) with `g0 = γ0`.
    pub fn dry(q: f64, gamma0: f64) -> Result<Self> {
        Self::new(q, gamma0, 0.0, gamma0)
    }

    /// Half-width `a0` of the initial parabolic section, `γ0 a0² + μ0 = Q`.
    pub fn a0(&self) -> f64 {
        sqrt((self.q - self.mu0) / self.gamma0)
    }

    /// Collapse time of the (dry) core.
    pub fn collapse_time(&self) -> f64 {
        PI / (4.0 * sqrt(self.gamma0))
    }

    /// Position `x_d = ¼√(3Q/γ0)` where the shoulder characteristics are vertical.
    pub fn hinge(&self) -> f64 {
        0.25 * sqrt(3.0 * self.q / self.gamma0)
    }

    /// Last time the solution is given by the closed form: the collapse time
    /// when dry, the crossing time of the edge characteristics when wet.
    pub fn validity_limit(&self) -> f64 {
        if self.mu0 == 0.0 {
            self.collapse_time()
        } else {
            // cannot fail: parameters were validated
            wet_crossing_time(self.q, self.mu0, self.gamma0).unwrap_or(0.0)
        }
    }
}

/// Coefficients of the self-similar core at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParabolaState {
    /// Time-like parameter σ ≥ 1.
    pub sigma: f64,
    /// Physical time.
    pub t: f64,
    /// Velocity slope ν.
    pub nu: f64,
    /// Curvature γ.
    pub gamma: f64,
    /// Minimum elevation μ.
    pub mu: f64,
}

/// A point of the shoulder simple wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShoulderPoint {
    /// Position.
    pub x: f64,
    /// Time.
    pub t: f64,
    /// σ at which the straight characteristic through `(x, t)` left the core.
    pub sigma0: f64,
    /// Elevation.
    pub n: f64,
    /// Velocity.
    pub v: f64,
}

/// Elevation and velocity sampled on a grid at one time.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FieldSnapshot {
    /// Time of the snapshot.
    pub t: f64,
    /// Sample positions.
    pub x: Vec<f64>,
    /// Elevation η.
    pub eta: Vec<f64>,
    /// Velocity u.
    pub u: Vec<f64>,
}

/// Characteristic family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `dx/dt = u + √η`.
    Plus,
    /// `dx/dt = u − √η`.
    Minus,
}

/// σ stored as `(sin θ, cos θ)`; keeps both ends of the σ range accurate.
#[derive(Debug, Clone, Copy)]
struct Angle {
    s: f64,
    c: f64,
}

impl Angle {
    fn from_sigma(sigma: f64) -> Result<Self> {
        if !(sigma >= 1.0) {
            return Err(Error::Domain("sigma must be at least 1"));
        }
        if sigma.is_infinite() {
            return Ok(Angle { s: 0.0, c: 1.0 });
        }
        let p = sqrt(sigma - 1.0);
        let r = sqrt(sigma);
        Ok(Angle { s: 1.0 / r, c: p / r })
    }

    fn from_theta(theta: f64) -> Self {
        Angle { s: libm::sin(theta), c: libm::cos(theta) }
    }

    fn theta(self) -> f64 {
        libm::atan2(self.s, self.c)
    }

    fn sigma(self) -> f64 {
        1.0 / (self.s * self.s)
    }
}

// (2θ − sin 2θ)/4, the scaled time remaining until collapse.
fn gap_unit(theta: f64) -> f64 {
    if theta < 0.25 {
        let z = 2.0 * theta;
        let z2 = z * z;
        let mut term = z * z2 / 6.0;
        let mut sum = 0.0;
        let mut k = 1;
        while term.abs() > 1e-18 * sum.abs() {
            sum += term;
            term *= -z2 / (((2 * k + 2) * (2 * k + 3)) as f64);
            k += 1;
        }
        0.25 * sum
    } else {
        0.25 * (2.0 * theta - libm::sin(2.0 * theta))
    }
}

// (2φ + sin 2φ)/4 with φ = π/2 − θ, the scaled elapsed time.
fn elapsed_unit(phi: f64) -> f64 {
    0.25 * (2.0 * phi + libm::sin(2.0 * phi))
}

fn time_of_angle(a: Angle, sg: f64) -> f64 {
    if a.s < a.c {
        FRAC_PI_4 / sg - gap_unit(a.theta()) / sg
    } else {
        elapsed_unit(libm::atan2(a.c, a.s)) / sg
    }
}

fn angle_of_time(t: f64, gamma0: f64) -> Result<Angle> {
    if !(gamma0 > 0.0) {
        return Err(Error::Domain("gamma0 must be positive"));
    }
    if !(t >= 0.0) {
        return Err(Error::Domain("negative time"));
    }
    let sg = sqrt(gamma0);
    let tc = FRAC_PI_4 / sg;
    if t >= tc {
        return Err(Error::PostCollapse);
    }
    if t == 0.0 {
        return Ok(Angle { s: 1.0, c: 0.0 });
    }
    let tol = Tolerance { abs: 1e-300, ..Tolerance::default() };
    if t <= 0.5 * tc {
        let target = sg * t;
        let phi = newton_bracketed(
            |p| {
                let c = libm::cos(p);
                (elapsed_unit(p) - target, c * c)
            },
            0.0,
            FRAC_PI_2,
            Some(target),
            tol,
        )?;
        Ok(Angle { s: libm::cos(phi), c: libm::sin(phi) })
    } else {
        let target = sg * (tc - t);
        let seed = cbrt(3.0 * target);
        let theta = newton_bracketed(
            |th| {
                let s = libm::sin(th);
                (gap_unit(th) - target, s * s)
            },
            0.0,
            FRAC_PI_2,
            Some(seed),
            tol,
        )?;
        Ok(Angle::from_theta(theta))
    }
}

/// Collapse time `t_c = π/(4√γ0)`.
pub fn collapse_time(gamma0: f64) -> Result<f64> {
    if !(gamma0 > 0.0) {
        return Err(Error::Domain("gamma0 must be positive"));
    }
    Ok(PI / (4.0 * sqrt(gamma0)))
}

/// Time `t(σ)` at which the core reaches parameter σ.
pub fn time_of_sigma(sigma: f64, gamma0: f64) -> Result<f64> {
    if !(gamma0 > 0.0) {
        return Err(Error::Domain("gamma0 must be positive"));
    }
    Ok(time_of_angle(Angle::from_sigma(sigma)?, sqrt(gamma0)))
}

/// Inverse of [`time_of_sigma`] on `0 ≤ t < t_c`.
pub fn sigma_from_time(t: f64, gamma0: f64) -> Result<f64> {
    Ok(angle_of_time(t, gamma0)?.sigma())
}

/// Core coefficients at parameter σ.
pub fn parabola_state(sigma: f64, params: &ScenarioParams) -> Result<ParabolaState> {
    let a = Angle::from_sigma(sigma)?;
    let sg = sqrt(params.gamma0);
    Ok(ParabolaState {
        sigma,
        t: time_of_angle(a, sg),
        nu: -2.0 * sg * sigma * sqrt(sigma - 1.0),
        gamma: params.gamma0 * sigma * sigma * sigma,
        mu: params.mu0 * sigma,
    })
}

/// Time at which the edge characteristics of a wet parabola (`μ0 > 0`) cross.
///
/// This is `t(σ = Q/μ0)`. For `μ0 = 0` the collapse time is returned.
pub fn wet_crossing_time(q: f64, mu0: f64, gamma0: f64) -> Result<f64> {
    if !(q > 0.0) {
        return Err(Error::Domain("Q must be positive"));
    }
    if !(mu0 >= 0.0 && mu0 <= q) {
        return Err(Error::Domain("mu0 must lie in [0, Q]"));
    }
    if mu0 == 0.0 {
        return collapse_time(gamma0);
    }
    time_of_sigma(q / mu0, gamma0)
}

/// Position at parameter σ of the characteristic of `family` that started at
/// `x0` inside the core.
///
/// `x± = x0/√σ ± √((σ−1)(x0² + μ0/γ0))/σ`; for a dry core and `x0 ≥ 0` this
/// is `x0(√σ ± √(σ−1))/σ`.
pub fn characteristic_position(sigma: f64, x0: f64, family: Family, params: &ScenarioParams) -> Result<f64> {
    let a = Angle::from_sigma(sigma)?;
    let spread = sqrt(x0 * x0 + params.mu0 / params.gamma0) * a.s * a.c;
    Ok(match family {
        Family::Plus => x0 * a.s + spread,
        Family::Minus => x0 * a.s - spread,
    })
}

// Edge of the core as a function of (sin θ, cos θ): position, elevation,
// velocity. `k = (Q − μ0σ)/(γ0(a0 + √(Q/γ0) cos θ))` carries the common factor.
fn edge<T: Real>(s: T, c: T, p: &ScenarioParams) -> (T, T, T) {
    // μ0σ; kept out of the dry case where σ = ∞ at collapse
    let wet = if p.mu0 > 0.0 { (T::cst(1.0) / (s * s)).scale(p.mu0) } else { T::cst(0.0) };
    let denom = (T::cst(p.a0()) + c.scale(sqrt(p.q / p.gamma0))).scale(p.gamma0);
    let k = (T::cst(p.q) - wet) / denom;
    let x = s * s * s * k;
    let eta = k * k.scale(p.gamma0) + wet;
    let u = -(c * k).scale(2.0 * sqrt(p.gamma0));
    (x, eta, u)
}

/// Edge of the parabolic section at σ: `(a, η(a), u(a))`.
///
/// For the dry core `a = √Q(√σ−√(σ−1))/(σ√γ0)`, `η = Qσ(√σ−√(σ−1))²` and
/// `u = −2√Q(√(σ²−σ) − (σ−1))`.
pub fn parabola_edge(sigma: f64, params: &ScenarioParams) -> Result<(f64, f64, f64)> {
    let a = Angle::from_sigma(sigma)?;
    Ok(edge(a.s, a.c, params))
}

/// Outer edge `b(t) = a0 + √Q t` of the shoulder.
pub fn shoulder_outer_edge(t: f64, params: &ScenarioParams) -> f64 {
    params.a0() + sqrt(params.q) * t
}

struct Solved {
    angle: Angle,
    reflected: bool,
}

fn shoulder_solve(x: f64, t: f64, p: &ScenarioParams) -> Result<Solved> {
    if !(t >= 0.0) {
        return Err(Error::Domain("negative time"));
    }
    let sg = sqrt(p.gamma0);
    let tc = FRAC_PI_4 / sg;
    let rel = t - tc;
    if p.mu0 > 0.0 && t >= p.validity_limit() {
        return Err(Error::Domain("wet shoulder queried after the edge crossing"));
    }
    let reflected = x < 0.0;
    if reflected && rel > 0.0 {
        return Err(Error::PostShockQuery);
    }
    let x = x.abs();
    let lo_angle = if rel < 0.0 { angle_of_time(t, p.gamma0)? } else { Angle { s: 0.0, c: 1.0 } };
    let theta_lo = lo_angle.theta();

    let position = |theta: f64| -> (f64, f64) {
        let th = Dual::var(theta);
        let (s, c) = (th.sin(), th.cos());
        let (xe, eta, u) = edge(s, c, p);
        let speed = u + eta.sqrt();
        let g = Dual::new(gap_unit(theta) / sg, s.v * s.v / sg);
        let r = xe + speed * (Dual::cst(rel) + g);
        (r.v, r.d)
    };

    let inner = if rel < 0.0 { edge(lo_angle.s, lo_angle.c, p).0 } else { position(0.0).0 };
    let outer = shoulder_outer_edge(t, p);
    let tol = 1e-12 * x.max(1.0);
    if x > outer + tol || (rel < 0.0 && x < inner - tol) {
        return Err(Error::OutsideShoulder);
    }
    if rel < 0.0 && x <= inner {
        return Ok(Solved { angle: lo_angle, reflected });
    }
    if x >= outer {
        return Ok(Solved { angle: Angle { s: 1.0, c: 0.0 }, reflected });
    }
    if theta_lo >= FRAC_PI_2 {
        return Ok(Solved { angle: Angle { s: 1.0, c: 0.0 }, reflected });
    }
    // near the cusp x ≈ √(Q/γ0) θ³/3
    let seed = if p.mu0 == 0.0 && rel.abs() < 1e-3 && x < 1e-2 * p.a0() {
        Some(cbrt(3.0 * x * sg / sqrt(p.q)).max(theta_lo))
    } else {
        None
    };
    let theta = newton_bracketed(
        |th| {
            let (v, d) = position(th);
            (v - x, d)
        },
        theta_lo,
        FRAC_PI_2,
        seed,
        Tolerance { abs: 1e-300, ..Tolerance::default() },
    )
    .map_err(|e| if e == Error::NoBracket { Error::OutsideShoulder } else { e })?;
    Ok(Solved { angle: Angle::from_theta(theta), reflected })
}

/// Launch parameter σ0 of the straight shoulder characteristic through `(x, t)`.
///
/// The left shoulder (`x < 0`) is handled by reflection up to the collapse
/// time; after it only `x ≥ 0` is single valued and other queries are refused.
pub fn shoulder_sigma0(x: f64, t: f64, params: &ScenarioParams) -> Result<f64> {
    Ok(shoulder_solve(x, t, params)?.angle.sigma())
}

/// Shoulder solution at `(x, t)`.
pub fn shoulder_eval(x: f64, t: f64, params: &ScenarioParams) -> Result<ShoulderPoint> {
    let sol = shoulder_solve(x, t, params)?;
    let (_, n, v) = edge(sol.angle.s, sol.angle.c, params);
    Ok(ShoulderPoint { x, t, sigma0: sol.angle.sigma(), n, v: if sol.reflected { -v } else { v } })
}

/// Coefficient `K = 3^{2/3} γ0^{1/3} Q^{2/3} / 8` of the cusp at collapse.
pub fn cusp_coefficient(params: &ScenarioParams) -> f64 {
    pow_two_thirds(3.0) * cbrt(params.gamma0) * pow_two_thirds(params.q) / 8.0
}

/// Leading behaviour `Q/4 + K|x|^{2/3}` of the elevation at the collapse time.
pub fn cusp_profile_n0(x: f64, params: &ScenarioParams) -> f64 {
    0.25 * params.q + cusp_coefficient(params) * pow_two_thirds(x.abs())
}

/// Outer elevation seen by a shock at `x_s`, `t_rel = t − t_c` after collapse:
/// `Q/4 + K (x_s + √Q t_rel / 2)^{2/3}`.
pub fn shock_trace_value(xs: f64, t_rel: f64, params: &ScenarioParams) -> f64 {
    let x0 = xs + 0.5 * sqrt(params.q) * t_rel;
    0.25 * params.q + cusp_coefficient(params) * pow_two_thirds(x0.max(0.0))
}

/// Whole solution on `x_grid` at `t`: core, both shoulders and background.
pub fn presingularity_snapshot(x_grid: &[f64], t: f64, params: &ScenarioParams) -> Result<FieldSnapshot> {
    if t >= params.validity_limit() {
        return Err(Error::PostCollapse);
    }
    let ang = angle_of_time(t, params.gamma0)?;
    let state = parabola_state(ang.sigma(), params)?;
    let (a, _, _) = edge(ang.s, ang.c, params);
    let b = shoulder_outer_edge(t, params);
    let n = x_grid.len();
    let mut snap = FieldSnapshot { t, x: x_grid.to_vec(), eta: Vec::with_capacity(n), u: Vec::with_capacity(n) };
    for &x in x_grid {
        let ax = x.abs();
        let (eta, u) = if ax <= a * (1.0 + 1e-12) {
            // γ·x² overflows for huge σ only when a has shrunk far below x
            (state.gamma * x * x + state.mu, state.nu * x)
        } else if ax < b {
            let sp = shoulder_eval(x, t, params)?;
            (sp.n, sp.v)
        } else {
            (params.q, 0.0)
        };
        snap.eta.push(eta);
        snap.u.push(u);
    }
    Ok(snap)
}
