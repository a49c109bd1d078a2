//! Initial-data families and the outer solutions that bracket the shocks.
//!
//! Post-collapse quantities use the shifted time `t − t_c`, so every
//! scenario starts its shock at `t = 0`.

use alloc::vec::Vec;

use crate::exact::{self, ScenarioParams};
use crate::interp::Pchip;
use crate::math::{cbrt, sqrt};
use crate::{Error, Result};

/// The initial-data families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Truncated parabola touching the bottom, `μ0 = 0`.
    DryParabola,
    /// Truncated parabola with a wet minimum `μ0 > 0`.
    WetParabola,
    /// Constant `Q/4` with colliding velocities `∓√Q`.
    DoubleRiemann,
    /// Two spliced Stoker rarefaction waves.
    DoubleStoker,
    /// The collapsed shoulders of the dry parabola at `t_c`.
    Full,
}

impl Scenario {
    /// All families, in CLI order.
    pub const ALL: [Scenario; 5] =
        [Scenario::DryParabola, Scenario::WetParabola, Scenario::DoubleRiemann, Scenario::DoubleStoker, Scenario::Full];

    /// Kebab-case name used on the command line and in manifests.
    pub fn name(self) -> &'static str {
        match self {
            Scenario::DryParabola => "dry-parabola",
            Scenario::WetParabola => "wet-parabola",
            Scenario::DoubleRiemann => "double-riemann",
            Scenario::DoubleStoker => "double-stoker",
            Scenario::Full => "full",
        }
    }

    /// Inverse of [`Scenario::name`].
    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    /// Whether the family is set up at the collapse (shifted time zero).
    pub fn is_post_collapse(self) -> bool {
        matches!(self, Scenario::DoubleRiemann | Scenario::DoubleStoker | Scenario::Full)
    }
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Truncated parabola `η = min(γ0x² + μ0, Q)`, `u = 0`.
pub fn truncated_parabola_ic(x: f64, p: &ScenarioParams) -> Result<(f64, f64)> {
    if p.mu0 > p.q {
        return Err(Error::Domain("mu0 must not exceed Q"));
    }
    let a0 = p.a0();
    if x.abs() < a0 {
        Ok((p.gamma0 * x * x + p.mu0, 0.0))
    } else {
        Ok((p.q, 0.0))
    }
}

/// Double-Riemann data `(Q/4, −sgn(x)√Q)`; the velocity is 0 at `x = 0`.
pub fn double_riemann_ic(x: f64, q: f64) -> (f64, f64) {
    (0.25 * q, -sgn(x) * sqrt(q))
}

/// Geometry of the double-Stoker data: `(x_d, t_d)`.
pub fn stoker_hinge(q: f64, g0: f64) -> (f64, f64) {
    (0.25 * sqrt(3.0 * q / g0), 0.5 * sqrt(3.0 / g0))
}

/// Double-Stoker fields `(N_S, V_S)` at `(x, t)`.
///
/// Valid as the outer solution for as long as the shocks stay inside the
/// hinges `±x_d`. At `x = 0` the velocity (which jumps there) is reported as 0.
pub fn double_stoker_fields(x: f64, t: f64, q: f64, g0: f64) -> (f64, f64) {
    let (xd, td) = stoker_hinge(q, g0);
    let sq = sqrt(q);
    let xq = sq * t + 3.0 * xd;
    let ax = x.abs();
    if ax >= xq {
        return (q, 0.0);
    }
    let g = (ax - xd) / (t + td) + 2.0 * sq;
    let n = g * g / 9.0;
    let v = 2.0 / 3.0 * (ax - xd) / (t + td) - 2.0 / 3.0 * sq;
    (n, sgn(x) * v)
}

/// Full-case data: the shoulders at the collapse time,
/// `η = N(|x|, t_c)`, `u = 2 sgn(x)(√η − √Q)`.
pub fn full_ic(x: f64, p: &ScenarioParams) -> Result<(f64, f64)> {
    let tc = p.collapse_time();
    let ax = x.abs();
    if ax >= exact::shoulder_outer_edge(tc, p) {
        return Ok((p.q, 0.0));
    }
    if ax == 0.0 {
        return Ok((0.25 * p.q, 0.0));
    }
    let n = exact::shoulder_eval(ax, tc, p)?.n;
    Ok((n, 2.0 * sgn(x) * (sqrt(n) - sqrt(p.q))))
}

/// Tabulated full-case data for repeated evaluation.
///
/// Nodes are log-spaced in `x` towards the cusp; the table is interpolated in
/// `ζ = x^{1/3}`, where `N − Q/4 ∼ Kζ²` is smooth.
#[derive(Debug, Clone)]
pub struct FullIcTable {
    q: f64,
    edge: f64,
    table: Pchip,
}

impl FullIcTable {
    /// Builds the table with `n` nodes between `1e-12·b` and `b = b(t_c)`.
    pub fn new(p: &ScenarioParams, n: usize) -> Result<Self> {
        let n = n.max(8);
        let tc = p.collapse_time();
        let edge = exact::shoulder_outer_edge(tc, p);
        let mut zs = Vec::with_capacity(n + 1);
        let mut ns = Vec::with_capacity(n + 1);
        zs.push(0.0);
        ns.push(0.25 * p.q);
        for k in 0..n {
            let e = -12.0 + 12.0 * k as f64 / (n - 1) as f64;
            let x = edge * libm::pow(10.0, e);
            let v = if k == n - 1 { p.q } else { exact::shoulder_eval(x, tc, p)?.n };
            zs.push(cbrt(x));
            ns.push(v);
        }
        Ok(FullIcTable { q: p.q, edge, table: Pchip::new(zs, ns)? })
    }

    /// Interpolated `(η, u)` at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let ax = x.abs();
        if ax >= self.edge {
            return (self.q, 0.0);
        }
        let n = self.table.eval(cbrt(ax));
        (n, 2.0 * sgn(x) * (sqrt(n) - sqrt(self.q)))
    }
}

/// Initial `(η, u)` of a family at `x`.
///
/// The parabola families start at `t = 0`; the others at the collapse.
pub fn initial_state(kind: Scenario, x: f64, p: &ScenarioParams) -> Result<(f64, f64)> {
    match kind {
        Scenario::DryParabola | Scenario::WetParabola => truncated_parabola_ic(x, p),
        Scenario::DoubleRiemann => Ok(double_riemann_ic(x, p.q)),
        Scenario::DoubleStoker => Ok(double_stoker_fields(x, 0.0, p.q, p.g0)),
        Scenario::Full => full_ic(x, p),
    }
}

/// Exact outer solution `(N, V)` at `x > 0` and shifted time `t_rel` after
/// the collapse, valid outside the shock.
pub fn outer_state(kind: Scenario, x: f64, t_rel: f64, p: &ScenarioParams) -> Result<(f64, f64)> {
    match kind {
        Scenario::DoubleRiemann => Ok(double_riemann_ic(x, p.q)),
        Scenario::DoubleStoker => Ok(double_stoker_fields(x, t_rel, p.q, p.g0)),
        Scenario::Full => {
            let t = p.collapse_time() + t_rel;
            if x >= exact::shoulder_outer_edge(t, p) {
                return Ok((p.q, 0.0));
            }
            let sp = exact::shoulder_eval(x, t, p)?;
            Ok((sp.n, sp.v))
        }
        Scenario::DryParabola | Scenario::WetParabola => {
            Err(Error::Domain("parabola families have no post-collapse outer state"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for k in Scenario::ALL {
            assert_eq!(Scenario::parse(k.name()), Some(k));
        }
        assert_eq!(Scenario::parse("stoker"), None);
    }

    #[test]
    fn parabola_splice() {
        let p = ScenarioParams::dry(1.0, 4.0).unwrap();
        assert_eq!(truncated_parabola_ic(0.0, &p).unwrap(), (0.0, 0.0));
        assert!((truncated_parabola_ic(0.5 - 1e-15, &p).unwrap().0 - 1.0).abs() < 1e-13);
        assert_eq!(truncated_parabola_ic(0.5, &p).unwrap().0, 1.0);
    }

    #[test]
    fn stoker_values() {
        let (q, g0) = (0.5, 1.0 / 16.0);
        let (n, v) = double_stoker_fields(1e-15, 0.0, q, g0);
        assert!((n - q / 4.0).abs() < 1e-14 && (v + sqrt(q)).abs() < 1e-14);
        let (xd, _) = stoker_hinge(q, g0);
        for &t in &[0.0, 0.3, 1.0] {
            let (n, v) = double_stoker_fields(xd, t, q, g0);
            assert!((n - 4.0 * q / 9.0).abs() < 1e-14);
            assert!((v + 2.0 * sqrt(q) / 3.0).abs() < 1e-14);
        }
        assert_eq!(double_stoker_fields(10.0, 0.0, q, g0), (q, 0.0));
    }

    #[test]
    fn full_and_stoker_agree_at_hinge() {
        let p = ScenarioParams::dry(0.5, 1.0 / 16.0).unwrap();
        let xd = p.hinge();
        let (n, _) = full_ic(xd, &p).unwrap();
        let (ns, _) = double_stoker_fields(xd, 0.0, p.q, p.gamma0);
        assert!((n - ns).abs() < 1e-12);
        assert_eq!(full_ic(0.0, &p).unwrap().0, 0.25 * p.q);
    }

    #[test]
    fn table_matches_direct_solve() {
        let p = ScenarioParams::dry(0.5, 1.0 / 16.0).unwrap();
        let tab = FullIcTable::new(&p, 400).unwrap();
        for &x in &[1e-7, 1e-4, 0.01, 0.3, 1.0, 2.0, -0.7] {
            let (e1, u1) = full_ic(x, &p).unwrap();
            let (e2, u2) = tab.eval(x);
            assert!((e1 - e2).abs() < 1e-6, "x {x}: {e1} vs {e2}");
            assert!((u1 - u2).abs() < 1e-5);
        }
    }
}
