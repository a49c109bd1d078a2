//! Short-time asymptotics after the collapse, in unfolding coordinates
//! `ξ = x/x_s(t)`, `τ = log x_s(t)`.
//!
//! Between the shocks `η = Q* + η̃`, `u` solve a wave equation whose general
//! solution is
//!
//! ```text
//! η̃ = ½(F(e^τ ξ − Φ) + F(−e^τ ξ − Φ)),   u = (F(e^τ ξ − Φ) − F(−e^τ ξ − Φ))/(2√Q*)
//! ```
//!
//! and the boundary condition at the shock fixes the Taylor (double-Stoker) or
//! 2/3-power (full case) coefficients of `F`. The outer state enters through
//!
//! ```text
//! φ(N, η, u) = (N − η)/(NV − ηu) − 1/s0,   ψ(N, η) = V + √((N − η)²(N + η)/(2Nη)),
//! ```
//!
//! with `V = 2√N − 2√Q`. All derivatives of φ and ψ are taken by forward-mode
//! differentiation, so every coefficient follows from closed forms and works
//! for arbitrary `(Q, g0)` or `(Q, γ0)`.

use crate::dual::{derivs2, mixed, Dual, Real};
use crate::math::{cbrt, exp, pow_two_thirds, powf, sqrt};
use crate::scenarios::stoker_hinge;
use crate::shock::{initial_shock_speed, qstar_of};
use crate::{Error, Result};

/// Which family a coefficient bundle describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// Constant outer states; the inner solution is stationary.
    DoubleRiemann,
    /// Analytic outer states, expansions in powers of `e^τ`.
    DoubleStoker,
    /// Cusp outer states, expansions in powers of `e^{2τ/3}`.
    Full,
}

/// Coefficients of the short-time expansions.
///
/// Fields that have no meaning for a case are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticCoefficients {
    /// Case tag.
    pub case: CaseTag,
    /// Background elevation.
    pub q: f64,
    /// Inner elevation at the collapse.
    pub qstar: f64,
    /// Initial shock speed.
    pub s0: f64,
    /// Boundary forcing rate: `lim e^{-τ}ψ0` (Stoker) or `lim e^{-2τ/3}ψ0` (full).
    pub a: f64,
    /// `lim ∂ψ/∂η` at the collapse.
    pub b: f64,
    /// `F'(0)`; for the full case the coefficient of the 2/3 power.
    pub f1: f64,
    /// `F''(0)`.
    pub f2: Option<f64>,
    /// `Φ0 = √Q*/s0`.
    pub phi0: f64,
    /// Second coefficient of `Φ(τ) ∼ Φ0 e^τ + Φ1 e^{2τ}`.
    pub phi1: Option<f64>,
    /// Shock-speed correction: `x_s ∼ s0 t + s1 t²` (Stoker) or
    /// `ẋ_s ∼ s0 + s1 t^{2/3}` (full).
    pub s1: f64,
    /// Coefficient of the correction to the shock position itself:
    /// `s1` for the Stoker case, `3s1/5` (the `t^{5/3}` term) for the full case.
    pub s1_position: f64,
    /// Velocity slope between the shocks at `t = 0⁺`.
    pub nu0: Option<f64>,
    /// Growth rate of the centreline elevation, `η(0,t) ∼ Q* + μ1 t`.
    pub mu1: Option<f64>,
    /// `u_x(0,t) ∼ −c_ux t^{-1/3}`.
    pub c_ux: Option<f64>,
    /// `η_xx(0,t) ∼ −c_ηxx t^{-4/3}`.
    pub c_etaxx: Option<f64>,
}

impl AsymptoticCoefficients {
    /// Predicted shock position at shifted time `t`.
    pub fn shock_position(&self, t: f64) -> f64 {
        match self.case {
            CaseTag::DoubleRiemann => self.s0 * t,
            CaseTag::DoubleStoker => self.s0 * t + self.s1_position * t * t,
            CaseTag::Full => self.s0 * t + self.s1_position * t * pow_two_thirds(t),
        }
    }
}

/// `ψ(N, η)`.
pub fn psi(n: f64, eta: f64, q: f64) -> f64 {
    psi_g(n, eta, q)
}

/// `φ(N, η, u)`.
pub fn phi(n: f64, eta: f64, u: f64, q: f64, s0: f64) -> f64 {
    phi_g(n, eta, u, q, s0)
}

fn simple_wave_v<T: Real>(n: T, q: f64) -> T {
    n.sqrt().scale(2.0) - T::cst(2.0 * sqrt(q))
}

fn psi_g<T: Real>(n: T, eta: T, q: f64) -> T {
    let v = simple_wave_v(n, q);
    let two = T::cst(2.0);
    v + (n - eta).abs() * ((n + eta) / (two * n * eta)).sqrt()
}

fn phi_g<T: Real>(n: T, eta: T, u: T, q: f64, s0: f64) -> T {
    let v = simple_wave_v(n, q);
    (n - eta) / (n * v - eta * u) - T::cst(1.0 / s0)
}

type D2 = Dual<Dual<f64>>;

// Derivatives of ψ and φ at the collapse state N = Q/4, η = Q*, u = 0.
struct Gradients {
    psi_n: f64,
    psi_nn: f64,
    psi_eta: f64,
    psi_neta: f64,
    phi_n: f64,
    phi_eta: f64,
    phi_u: f64,
}

fn gradients(q: f64, qs: f64, s0: f64) -> Gradients {
    let n0 = 0.25 * q;
    let (_, psi_n, psi_nn) = derivs2(|n: D2| psi_g(n, D2::cst(qs), q), n0);
    let (_, psi_eta, _) = derivs2(|e: D2| psi_g(D2::cst(n0), e, q), qs);
    let (_, psi_neta) = mixed(|n: D2, e: D2| psi_g(n, e, q), n0, qs);
    let (_, phi_n, _) = derivs2(|n: D2| phi_g(n, D2::cst(qs), D2::cst(0.0), q, s0), n0);
    let (_, phi_eta, _) = derivs2(|e: D2| phi_g(D2::cst(n0), e, D2::cst(0.0), q, s0), qs);
    let (_, phi_u, _) = derivs2(|u: D2| phi_g(D2::cst(n0), D2::cst(qs), u, q, s0), 0.0);
    Gradients { psi_n, psi_nn, psi_eta, psi_neta, phi_n, phi_eta, phi_u }
}

fn check_positive(q: f64, other: f64) -> Result<()> {
    if !(q > 0.0 && other > 0.0 && q.is_finite() && other.is_finite()) {
        return Err(Error::Domain("Q and the curvature parameter must be positive"));
    }
    Ok(())
}

/// The stationary double-Riemann inner solution.
pub fn riemann_coefficients(q: f64) -> Result<AsymptoticCoefficients> {
    check_positive(q, 1.0)?;
    let qstar = qstar_of(q)?;
    let s0 = initial_shock_speed(q)?;
    let g = gradients(q, qstar, s0);
    Ok(AsymptoticCoefficients {
        case: CaseTag::DoubleRiemann,
        q,
        qstar,
        s0,
        a: 0.0,
        b: g.psi_eta,
        f1: 0.0,
        f2: Some(0.0),
        phi0: sqrt(qstar) / s0,
        phi1: Some(0.0),
        s1: 0.0,
        s1_position: 0.0,
        nu0: Some(0.0),
        mu1: Some(0.0),
        c_ux: None,
        c_etaxx: None,
    })
}

/// Taylor coefficients of the double-Stoker outer elevation at `(0⁺, 0)`:
/// `(N_x, N_t, N_xx, N_xt, N_tt)`.
fn stoker_taylor(q: f64, g0: f64) -> [f64; 5] {
    let (xd, td) = stoker_hinge(q, g0);
    // N = g²/9 with g = (x − x_d)/(t + t_d) + 2√Q
    let g = -xd / td + 2.0 * sqrt(q);
    let gx = 1.0 / td;
    let gt = xd / (td * td);
    let gxt = -1.0 / (td * td);
    let gtt = -2.0 * xd / (td * td * td);
    [
        2.0 * g * gx / 9.0,
        2.0 * g * gt / 9.0,
        2.0 * gx * gx / 9.0,
        2.0 * (gx * gt + g * gxt) / 9.0,
        2.0 * (gt * gt + g * gtt) / 9.0,
    ]
}

/// Coefficients for double-Stoker data with parameters `(Q, g0)`.
///
/// The second-order pair `(F''(0), s1)` comes from carrying the linearised
/// boundary condition and `t(τ)` to `O(e^{2τ})`.
pub fn stoker_coefficients(q: f64, g0: f64) -> Result<AsymptoticCoefficients> {
    check_positive(q, g0)?;
    let qs = qstar_of(q)?;
    let s0 = initial_shock_speed(q)?;
    let rq = sqrt(qs);
    let g = gradients(q, qs, s0);
    let [nx, nt, nxx, nxt, ntt] = stoker_taylor(q, g0);

    // N(e^τ, t(τ)) = Q/4 + N1 e^τ + N2 e^{2τ} with t = e^τ/s0 + t2 e^{2τ}
    let n1 = nx + nt / s0;
    let a = g.psi_n * n1;
    let b = g.psi_eta;
    let f1 = rq * a * s0 / (s0 + b * qs);
    let nu0 = f1 / rq;
    let mu1 = -nu0 * qs;
    let phi0 = rq / s0;
    let phi01 = g.phi_n * n1;
    let phi1 = 0.5 * rq * phi01;

    let t2 = 0.5 * (phi01 + g.phi_eta * (-f1 * phi0) + g.phi_u * f1 / rq);
    let s1 = -s0 * s0 * s0 * t2;

    let n2 = nt * t2 + 0.5 * nxx + nxt / s0 + 0.5 * ntt / (s0 * s0);
    let a2 = g.psi_n * n2 + 0.5 * g.psi_nn * n1 * n1;
    let b1 = g.psi_neta * n1;
    let f2 = (a2 - b * f1 * phi1 - b1 * f1 * phi0) / (-phi0 / rq - 0.5 * b * (1.0 + phi0 * phi0));

    Ok(AsymptoticCoefficients {
        case: CaseTag::DoubleStoker,
        q,
        qstar: qs,
        s0,
        a,
        b,
        f1,
        f2: Some(f2),
        phi0,
        phi1: Some(phi1),
        s1,
        s1_position: s1,
        nu0: Some(nu0),
        mu1: Some(mu1),
        c_ux: None,
        c_etaxx: None,
    })
}

/// Closed form `Φ1 = −√(g0Q*)/(3√3) (1 + 4Q*/Q)(√Q + 2s0)/(Q s0)`.
pub fn stoker_phi1_closed_form(q: f64, g0: f64) -> Result<f64> {
    let qs = qstar_of(q)?;
    let s0 = initial_shock_speed(q)?;
    Ok(-sqrt(g0 * qs) / (3.0 * sqrt(3.0)) * (1.0 + 4.0 * qs / q) * (sqrt(q) + 2.0 * s0) / (q * s0))
}

/// Coefficient `C` of the full-case outer forcing `N(e^τ, t(τ)) ∼ Q/4 + C e^{2τ/3}`.
pub fn full_forcing_coefficient(q: f64, gamma0: f64, s0: f64) -> f64 {
    0.5 * pow_two_thirds(3.0 * sqrt(gamma0) * q * (sqrt(q) + 2.0 * s0) / (16.0 * s0))
}

/// Coefficients for the collapsed parabola with parameters `(Q, γ0)`.
pub fn full_coefficients(q: f64, gamma0: f64) -> Result<AsymptoticCoefficients> {
    check_positive(q, gamma0)?;
    let qs = qstar_of(q)?;
    let s0 = initial_shock_speed(q)?;
    let rq = sqrt(qs);
    let g = gradients(q, qs, s0);
    let c = full_forcing_coefficient(q, gamma0, s0);

    let a = g.psi_n * c;
    let b = g.psi_eta;
    let lo = pow_two_thirds(rq - s0);
    let hi = pow_two_thirds(rq + s0);
    let f1 = 2.0 * pow_two_thirds(s0) * rq * a / (lo * (1.0 - rq * b) - hi * (1.0 + rq * b));
    let q23 = pow_two_thirds(qs);
    let c_ux = 2.0 * f1 / (3.0 * q23);
    let c_etaxx = 2.0 * f1 / (9.0 * q23);

    let phi0 = rq / s0;
    let eta1 = 0.5 * f1 * (pow_two_thirds(phi0 - 1.0) + pow_two_thirds(phi0 + 1.0));
    let u1 = 0.5 * f1 / rq * (pow_two_thirds(phi0 - 1.0) - pow_two_thirds(phi0 + 1.0));
    // dt/dτ ∼ e^τ (1/s0 + d e^{2τ/3})
    let d = g.phi_n * c + g.phi_eta * eta1 + g.phi_u * u1;
    let s0_83 = powf(s0, 8.0 / 3.0);
    let s1 = -d * s0_83;

    Ok(AsymptoticCoefficients {
        case: CaseTag::Full,
        q,
        qstar: qs,
        s0,
        a,
        b,
        f1,
        f2: None,
        phi0,
        phi1: None,
        s1,
        s1_position: 0.6 * s1,
        nu0: None,
        mu1: None,
        c_ux: Some(c_ux),
        c_etaxx: Some(c_etaxx),
    })
}

/// Coordinates of a profile query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coords {
    /// `(ξ, τ)`; returns `(η̃, u)`.
    Unfolded {
        /// Scaled position, `|ξ| ≤ 1`.
        xi: f64,
        /// `log x_s`.
        tau: f64,
    },
    /// `(x, t)` with `t` measured from the collapse; returns `(η, u)`.
    Physical {
        /// Position, `|x| ≤ x_s(t)`.
        x: f64,
        /// Shifted time.
        t: f64,
    },
}

const STRIP_TOL: f64 = 1e-12;

fn check_strip(xi: f64) -> Result<()> {
    if xi.abs() > 1.0 + STRIP_TOL {
        return Err(Error::Domain("query outside the strip between the shocks"));
    }
    Ok(())
}

/// Second-order double-Stoker profiles.
pub fn inner_profile_stoker(at: Coords, c: &AsymptoticCoefficients) -> Result<(f64, f64)> {
    let (f2, phi1) = match (c.f2, c.phi1) {
        (Some(f2), Some(phi1)) if c.case != CaseTag::Full => (f2, phi1),
        _ => return Err(Error::Domain("coefficients are not of double-Stoker type")),
    };
    let (f1, p0, rq) = (c.f1, c.phi0, sqrt(c.qstar));
    match at {
        Coords::Unfolded { xi, tau } => {
            check_strip(xi)?;
            let e = exp(tau);
            let eta = -f1 * p0 * e + (-f1 * phi1 + 0.5 * f2 * (xi * xi + p0 * p0)) * e * e;
            let u = (f1 / rq) * xi * e - (f2 / rq) * p0 * xi * e * e;
            Ok((eta, u))
        }
        Coords::Physical { x, t } => {
            if !(t >= 0.0) {
                return Err(Error::Domain("negative shifted time"));
            }
            let xs = c.shock_position(t);
            if xs > 0.0 {
                check_strip(x / xs)?;
            } else if x != 0.0 {
                return Err(Error::Domain("query outside the strip between the shocks"));
            }
            let (s0, s1) = (c.s0, c.s1);
            let eta = c.qstar - f1 * p0 * s0 * t - (f1 * p0 * s1 + (f1 * phi1 - 0.5 * f2 * p0 * p0) * s0 * s0) * t * t
                + 0.5 * f2 * x * x;
            let u = x / rq * (f1 - f2 * p0 * (s0 * t + s1 * t * t));
            Ok((eta, u))
        }
    }
}

/// Leading-order full-case profiles.
pub fn inner_profile_full(at: Coords, c: &AsymptoticCoefficients) -> Result<(f64, f64)> {
    if c.case != CaseTag::Full {
        return Err(Error::Domain("coefficients are not of full-case type"));
    }
    let rq = sqrt(c.qstar);
    match at {
        Coords::Unfolded { xi, tau } => {
            check_strip(xi)?;
            let e = exp(2.0 * tau / 3.0);
            let l = pow_two_thirds(c.phi0 - xi);
            let r = pow_two_thirds(c.phi0 + xi);
            Ok((0.5 * c.f1 * (l + r) * e, 0.5 * c.f1 / rq * (l - r) * e))
        }
        Coords::Physical { x, t } => {
            if !(t >= 0.0) {
                return Err(Error::Domain("negative shifted time"));
            }
            let xs = c.shock_position(t);
            if xs > 0.0 {
                check_strip(x / xs)?;
            } else if x != 0.0 {
                return Err(Error::Domain("query outside the strip between the shocks"));
            }
            let l = pow_two_thirds(rq * t - x);
            let r = pow_two_thirds(rq * t + x);
            Ok((c.qstar + 0.5 * c.f1 * (l + r), 0.5 * c.f1 / rq * (l - r)))
        }
    }
}

/// Centreline asymptotics in physical variables: `(η̃(0,t), u_x(0,t), η_xx(0,t))`.
pub fn centerline_prediction(c: &AsymptoticCoefficients, t: f64) -> (f64, f64, f64) {
    match c.case {
        CaseTag::DoubleRiemann => (0.0, 0.0, 0.0),
        CaseTag::DoubleStoker => {
            let (f2, phi1) = (c.f2.unwrap_or(0.0), c.phi1.unwrap_or(0.0));
            let p0 = c.phi0;
            let eta =
                -c.f1 * p0 * c.s0 * t - (c.f1 * p0 * c.s1 + (c.f1 * phi1 - 0.5 * f2 * p0 * p0) * c.s0 * c.s0) * t * t;
            let ux = (c.f1 - f2 * p0 * (c.s0 * t + c.s1 * t * t)) / sqrt(c.qstar);
            (eta, ux, f2)
        }
        CaseTag::Full => {
            let eta = c.f1 * pow_two_thirds(sqrt(c.qstar) * t);
            let ct = cbrt(t);
            (eta, -c.c_ux.unwrap_or(0.0) / ct, -c.c_etaxx.unwrap_or(0.0) / (t * ct))
        }
    }
}

/// Centreline derivative samples of a perturbation solution at `ξ = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CenterlineSample {
    /// `η_τ`.
    pub eta_tau: f64,
    /// `η_ττ`.
    pub eta_tautau: f64,
    /// `η_ξξ`.
    pub eta_xixi: f64,
    /// `u_ξ`.
    pub u_xi: f64,
    /// `u_ξτ`.
    pub u_xitau: f64,
    /// Boundary forcing `φ0(τ)`.
    pub phi0: f64,
    /// `dφ0/dτ`.
    pub phi0_tau: f64,
}

/// Residuals of the centreline identities of the linearised unfolded system,
/// with `c = 1/s0 + φ0`:
///
/// ```text
/// η_ξξ = −(u_ξτ − u_ξ)/c,   u_ξ = −η_τ/(Q* c),   u_ξτ = −(η_ττ + Q* φ0_τ u_ξ)/(Q* c).
/// ```
pub fn centerline_identities(s: &CenterlineSample, coeffs: &AsymptoticCoefficients) -> [f64; 3] {
    let c = 1.0 / coeffs.s0 + s.phi0;
    let qs = coeffs.qstar;
    [
        s.eta_xixi + (s.u_xitau - s.u_xi) / c,
        s.u_xi + s.eta_tau / (qs * c),
        s.u_xitau + (s.eta_tautau + qs * s.phi0_tau * s.u_xi) / (qs * c),
    ]
}

/// Coefficients recovered from the local Taylor expansion of the inner
/// solution closed by the jump conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorOracle {
    /// Inner elevation at `t = 0⁺`.
    pub mu0: f64,
    /// Initial shock speed.
    pub s0: f64,
    /// Velocity slope `u_0(0)`.
    pub nu0: f64,
    /// Elevation growth rate `η_0'(0)`.
    pub mu1: f64,
    /// Shock acceleration coefficient, `x_s ∼ s0 t + s1 t²`.
    pub s1: f64,
    /// `u_0'(0)`.
    pub nu1: f64,
    /// Centreline curvature `η_xx(0, 0⁺)` of the nonlinear solution.
    pub eta_xx0: f64,
}

/// Independent recomputation of the double-Stoker coefficients from the
/// local Taylor hierarchy.
///
/// The inner solution is `η = η_0(t) + η_1(t)x² + …`, `u = u_0(t)x + …` and
/// the equations at `x = 0` give
///
/// ```text
/// η_0' = −u_0 η_0,   u_0' = −u_0² − 2η_1.
/// ```
///
/// The outer state is the Stoker wave at the shock. Order `t⁰` of the
/// jump-consistency relation is the `Q*` cubic, order `t¹` is linear in
/// `ν0 = u_0(0)`, order `t²` is linear in `ν1 = u_0'(0)`; the shock speed
/// then follows from mass conservation. Series in `t` are carried by
/// nested dual numbers.
///
/// Unlike the unfolding expansion, nothing here is linearised, so `eta_xx0`
/// includes the quadratic self-interaction that the linear `F''(0)` omits.
pub fn taylor_hierarchy_oracle(q: f64, g0: f64) -> Result<TaylorOracle> {
    check_positive(q, g0)?;
    let mu0 = qstar_of(q)?;
    let n00 = 0.25 * q;
    let v00 = -sqrt(q);
    // order t⁰: speed from the jump of the constant states
    let s0 = (n00 * v00) / (n00 - mu0);
    let (xd, td) = stoker_hinge(q, g0);
    let sq = sqrt(q);

    let c = D2::cst;
    let sides = |nu0: f64, nu1: f64, s1: f64| {
        let t = D2 { v: Dual::var(0.0), d: Dual::new(1.0, 0.0) };
        let xs = t.scale(s0) + (t * t).scale(s1);
        let g = (xs - c(xd)) / (t + c(td)) + c(2.0 * sq);
        let n = g * g.scale(1.0 / 9.0);
        let v = (xs - c(xd)).scale(2.0 / 3.0) / (t + c(td)) - c(2.0 / 3.0 * sq);
        let mu1 = -nu0 * mu0;
        let eta0_tt = -(nu1 * mu0 + nu0 * mu1);
        let eta1 = -0.5 * (nu1 + nu0 * nu0);
        let eta_l = c(mu0) + t.scale(mu1) + (t * t).scale(0.5 * eta0_tt) + (xs * xs).scale(eta1);
        let u_l = (c(nu0) + t.scale(nu1)) * xs;
        (eta_l, u_l, n, v)
    };
    // (R'(0), R''(0)) of the consistency residual
    let residual = |nu0: f64, nu1: f64, s1: f64| {
        let (el, ul, er, ur) = sides(nu0, nu1, s1);
        let du = ur - ul;
        let de = er - el;
        let r = du * du - de * de * (er + el) / (er * el).scale(2.0);
        (r.v.d, r.d.d)
    };
    let secant = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
        let (a, b) = (f(0.0), f(1.0));
        if a == b {
            return Err(Error::Extraction("jump relation does not involve the unknown"));
        }
        Ok(-a / (b - a))
    };
    let nu0 = secant(&|n| residual(n, 0.0, 0.0).0)?;
    let speed = |nu1: f64, s1: f64| {
        let (el, ul, er, ur) = sides(nu0, nu1, s1);
        (er * ur - el * ul) / (er - el)
    };
    let sp = speed(0.0, 0.0);
    let s1 = 0.5 * sp.v.d;
    let nu1 = secant(&|n| residual(nu0, n, s1).1)?;
    Ok(TaylorOracle { mu0, s0: sp.v.v, nu0, mu1: -nu0 * mu0, s1, nu1, eta_xx0: -(nu1 + nu0 * nu0) })
}
