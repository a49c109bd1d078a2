//! Shock-fitted Chebyshev collocation solver.
//!
//! In unfolding coordinates `ξ = x/x_s(t)`, `τ = log x_s` the inner region is
//! the fixed interval `ξ ∈ [0, 1]` (the solution is even in `η`, odd in `u`).
//! With `R± = u ± 2√η` the system reads
//!
//! ```text
//! R+_τ − ξ R+_ξ + c (¾R+ + ¼R−) R+_ξ = 0
//! R−_τ − ξ R−_ξ + c (¼R+ + ¾R−) R−_ξ = 0,      dt/dτ = e^τ c,   c = 1/s0 + φ
//! ```
//!
//! with `R+ + R− = 0` at `ξ = 0` and the Rankine–Hugoniot relation at `ξ = 1`
//! closed for `R−` by Newton iteration. Nodal values live on the
//! Gauss–Lobatto–Chebyshev points.

use alloc::vec;
use alloc::vec::Vec;

use crate::asymptotics::phi;
use crate::dual::{Dual, Real};
use crate::exact::{self, FieldSnapshot, ScenarioParams};
use crate::math::{exp, ln, pow_two_thirds, sqrt};
use crate::scenarios::{double_stoker_fields, Scenario};
use crate::shock::{initial_shock_speed, qstar_of};
use crate::{Error, Result};

/// Safety factor in `h ≤ C Δξ_min / |λ_max|`.
///
/// With `M = 64` the fastest characteristic at `ξ = 1` moves at about 3.33 in
/// `ξ` per unit `τ` whatever `Q`, so 0.6 admits the customary `h = 1e-4`.
pub const CFL_SAFETY: f64 = 0.6;

/// Newton closure tolerance on the boundary residual (scaled by `max(1, |R|)`).
pub const BC_TOLERANCE: f64 = 1e-13;

const NEWTON_MAX_ITER: usize = 50;
const NEWTON_HALVINGS: usize = 8;

/// GLC points `ξ_i = ½ + ½cos(π + (i−1)π/(M−1))`, increasing from 0 to 1.
pub fn glc_grid(m: usize) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(Error::Domain("at least two collocation points are needed"));
    }
    let n = (m - 1) as f64;
    let mut xi: Vec<f64> = (0..m)
        .map(|i| {
            // sin form is symmetric to rounding: ½ − ½cos(iπ/n) = sin²(iπ/2n)
            let s = libm::sin(core::f64::consts::FRAC_PI_2 * i as f64 / n);
            s * s
        })
        .collect();
    // mirror so that ξ_i + ξ_{M+1−i} = 1 holds exactly
    for i in 0..m / 2 {
        xi[m - 1 - i] = 1.0 - xi[i];
    }
    if m % 2 == 1 {
        xi[m / 2] = 0.5;
    }
    Ok(xi)
}

/// Dense `M × M` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Order of the matrix.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, zero-based.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// `out = A v`.
    pub fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        for (row, o) in self.data.chunks_exact(self.n).zip(out.iter_mut()) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }

    /// `A v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        self.apply_into(v, &mut out);
        out
    }
}

/// Barycentric weights `1/Π_{k≠j}(x_j − x_k)`, up to a common factor.
pub fn barycentric_weights(points: &[f64]) -> Result<Vec<f64>> {
    let n = points.len();
    let lo = points.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = points.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    // capacity scaling keeps the products near unity for large n
    let scale = 4.0 / (hi - lo);
    let mut w = vec![1.0; n];
    for j in 0..n {
        for k in 0..n {
            if j != k {
                let d = points[j] - points[k];
                if d == 0.0 {
                    return Err(Error::Domain("collocation points must be distinct"));
                }
                w[j] /= scale * d;
            }
        }
    }
    Ok(w)
}

/// Value at `x` of the polynomial interpolating `values` on `points`.
pub fn barycentric_eval(points: &[f64], weights: &[f64], values: &[f64], x: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((p, w), v) in points.iter().zip(weights).zip(values) {
        let d = x - p;
        if d == 0.0 {
            return *v;
        }
        let c = w / d;
        num += c * v;
        den += c;
    }
    num / den
}

/// Differentiation matrix `D_ij = T_j'(ξ_i)` of the Lagrange basis on `points`.
///
/// Off-diagonal entries use barycentric weights; diagonals are the negative
/// row sums, so constants are differentiated to zero exactly.
pub fn lagrange_diff_matrix(points: &[f64]) -> Result<Matrix> {
    let n = points.len();
    if n < 2 {
        return Err(Error::Domain("at least two points are needed"));
    }
    let w = barycentric_weights(points)?;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                let v = (w[j] / w[i]) / (points[i] - points[j]);
                data[i * n + j] = v;
                diag -= v;
            }
        }
        data[i * n + i] = diag;
    }
    Ok(Matrix { n, data })
}

/// Collocation grid and its differentiation matrix.
#[derive(Debug, Clone)]
pub struct Collocation {
    /// GLC points.
    pub xi: Vec<f64>,
    /// First-derivative matrix.
    pub d: Matrix,
}

impl Collocation {
    /// Grid with `m` points.
    pub fn new(m: usize) -> Result<Self> {
        let xi = glc_grid(m)?;
        let d = lagrange_diff_matrix(&xi)?;
        Ok(Collocation { xi, d })
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.xi.len()
    }

    /// Always false; a grid has at least two points.
    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// Smallest spacing, `ξ_M − ξ_{M−1}`.
    pub fn dxi_min(&self) -> f64 {
        let m = self.xi.len();
        self.xi[m - 1] - self.xi[m - 2]
    }
}

/// Outer solution that drives the boundary at `ξ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Forcing {
    /// Post-collapse family.
    pub kind: Scenario,
    /// Parameters; `g0` is used for double-Stoker, `γ0` for the full case.
    pub params: ScenarioParams,
    /// Inner elevation at collapse.
    pub qstar: f64,
    /// Initial shock speed.
    pub s0: f64,
}

impl Forcing {
    /// Forcing for one of the post-collapse families.
    pub fn new(kind: Scenario, params: ScenarioParams) -> Result<Self> {
        if !kind.is_post_collapse() {
            return Err(Error::Domain("shock fitting needs a post-collapse family"));
        }
        Ok(Forcing { kind, params, qstar: qstar_of(params.q)?, s0: initial_shock_speed(params.q)? })
    }

    /// Outer `(N, V)` at the shock `x_s = e^τ`, shifted time `t`.
    ///
    /// Double-Stoker uses the exact outer fields; the full case uses the cusp
    /// expansion `N ∼ Q/4 + K(x_s + √Q t/2)^{2/3}` on the simple wave
    /// `V = 2√N − 2√Q`.
    pub fn outer(&self, tau: f64, t: f64) -> (f64, f64) {
        let q = self.params.q;
        match self.kind {
            Scenario::DoubleStoker => double_stoker_fields(exp(tau), t, q, self.params.g0),
            Scenario::Full => {
                let n = exact::shock_trace_value(exp(tau), t, &self.params);
                (n, 2.0 * sqrt(n) - 2.0 * sqrt(q))
            }
            _ => (0.25 * q, -sqrt(q)),
        }
    }
}

/// Boundary data at `ξ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryForcing {
    /// Outer elevation.
    pub n: f64,
    /// Outer velocity.
    pub v: f64,
    /// `φ`, the correction to the advection factor.
    pub phi: f64,
    /// `ψ`, the velocity the jump conditions demand behind the shock.
    pub psi: f64,
}

/// `(N, V, φ, ψ)` at `τ`, `t` for inner boundary values `(η, u)`.
pub fn boundary_forcing(tau: f64, t: f64, eta: f64, u: f64, forcing: &Forcing) -> Result<BoundaryForcing> {
    if !(eta > 0.0) {
        return Err(Error::Domain("inner elevation at the shock must be positive"));
    }
    let (n, v) = forcing.outer(tau, t);
    let p = phi(n, eta, u, forcing.params.q, forcing.s0);
    let psi = crate::asymptotics::psi(n, eta, forcing.params.q);
    Ok(BoundaryForcing { n, v, phi: p, psi })
}

/// Nodal Riemann variables at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct UnfoldedState {
    /// `log x_s`.
    pub tau: f64,
    /// Shifted physical time.
    pub t: f64,
    /// `R+` at the GLC points.
    pub r: Vec<f64>,
    /// `R−` at the GLC points.
    pub s: Vec<f64>,
}

impl UnfoldedState {
    /// Uniform state `R± = ±2√Q*` with `t = e^{τ0}/s0`.
    pub fn initial(m: usize, tau0: f64, forcing: &Forcing) -> Self {
        let r0 = 2.0 * sqrt(forcing.qstar);
        UnfoldedState { tau: tau0, t: exp(tau0) / forcing.s0, r: vec![r0; m], s: vec![-r0; m] }
    }

    /// Elevation at node `i`.
    pub fn eta(&self, i: usize) -> f64 {
        let d = self.r[i] - self.s[i];
        d * d / 16.0
    }

    /// Velocity at node `i`.
    pub fn u(&self, i: usize) -> f64 {
        0.5 * (self.r[i] + self.s[i])
    }

    /// Shock position.
    pub fn xs(&self) -> f64 {
        exp(self.tau)
    }

    fn last(&self) -> usize {
        self.r.len() - 1
    }
}

/// Time derivatives of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct Rates {
    /// `dr/dτ`.
    pub r: Vec<f64>,
    /// `ds/dτ`.
    pub s: Vec<f64>,
    /// `dt/dτ`.
    pub t: f64,
}

fn advection_factor(state: &UnfoldedState, forcing: &Forcing) -> Result<f64> {
    let m = state.last();
    let bf = boundary_forcing(state.tau, state.t, state.eta(m), state.u(m), forcing)?;
    Ok(1.0 / forcing.s0 + bf.phi)
}

/// Collocation right-hand side.
pub fn rhs(state: &UnfoldedState, col: &Collocation, forcing: &Forcing) -> Result<Rates> {
    let c = advection_factor(state, forcing)?;
    let dr = col.d.apply(&state.r);
    let ds = col.d.apply(&state.s);
    let mut rr = dr;
    let mut rs = ds;
    for i in 0..col.len() {
        let (ri, si, xi) = (state.r[i], state.s[i], col.xi[i]);
        rr[i] *= xi - c * (0.75 * ri + 0.25 * si);
        rs[i] *= xi - c * (0.25 * ri + 0.75 * si);
    }
    Ok(Rates { r: rr, s: rs, t: exp(state.tau) * c })
}

/// Largest characteristic speed in `ξ`, attained at `ξ = 1`.
pub fn max_speed(state: &UnfoldedState, forcing: &Forcing) -> Result<f64> {
    let c = advection_factor(state, forcing)?;
    let m = state.last();
    let (r, s) = (state.r[m], state.s[m]);
    Ok((1.0 - c * (0.75 * r + 0.25 * s)).abs().max((1.0 - c * (0.25 * r + 0.75 * s)).abs()))
}

/// Time integrator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Forward Euler.
    Euler,
    /// Classical fourth-order Runge–Kutta.
    Rk4,
}

fn axpy(base: &UnfoldedState, k: &Rates, h: f64) -> UnfoldedState {
    UnfoldedState {
        tau: base.tau + h,
        t: base.t + h * k.t,
        r: base.r.iter().zip(&k.r).map(|(a, b)| a + h * b).collect(),
        s: base.s.iter().zip(&k.s).map(|(a, b)| a + h * b).collect(),
    }
}

/// Steps by `h` in `τ` and applies the boundary conditions.
pub fn advance(
    state: &UnfoldedState,
    col: &Collocation,
    forcing: &Forcing,
    h: f64,
    scheme: Scheme,
) -> Result<(UnfoldedState, Closure)> {
    let limit = CFL_SAFETY * col.dxi_min() / max_speed(state, forcing)?;
    if !(h > 0.0) || h > limit {
        return Err(Error::Cfl { step: h, limit });
    }
    let next = match scheme {
        Scheme::Euler => axpy(state, &rhs(state, col, forcing)?, h),
        Scheme::Rk4 => {
            let k1 = rhs(state, col, forcing)?;
            let k2 = rhs(&axpy(state, &k1, 0.5 * h), col, forcing)?;
            let k3 = rhs(&axpy(state, &k2, 0.5 * h), col, forcing)?;
            let k4 = rhs(&axpy(state, &k3, h), col, forcing)?;
            let m = state.r.len();
            let mut r = state.r.clone();
            let mut s = state.s.clone();
            for i in 0..m {
                r[i] += h / 6.0 * (k1.r[i] + 2.0 * k2.r[i] + 2.0 * k3.r[i] + k4.r[i]);
                s[i] += h / 6.0 * (k1.s[i] + 2.0 * k2.s[i] + 2.0 * k3.s[i] + k4.s[i]);
            }
            let t = state.t + h / 6.0 * (k1.t + 2.0 * k2.t + 2.0 * k3.t + k4.t);
            UnfoldedState { tau: state.tau + h, t, r, s }
        }
    };
    apply_bcs(next, forcing)
}

/// Outcome of the Newton closure at `ξ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Closure {
    /// Final residual.
    pub residual: f64,
    /// Iterations used.
    pub iterations: usize,
}

fn bc_residual<T: Real>(r: T, s: T, n: f64, v: f64) -> T {
    let rd = r - s;
    let rd2 = rd * rd;
    let n16 = T::cst(16.0 * n);
    let a = n16 - rd2;
    r + s - T::cst(2.0 * v) - (a * a * (n16 + rd2) / (rd2.scale(128.0 * n))).sqrt()
}

/// Residual of the shock condition at `ξ = 1` for given `(R+, R−)`.
pub fn boundary_residual(r: f64, s: f64, n: f64, v: f64) -> f64 {
    bc_residual(r, s, n, v)
}

/// Solves the shock condition for `R−` given `R+`, starting from `guess`.
///
/// Damped Newton: a step that increases `|g|` is halved up to eight times.
/// Returns the root and the residual history.
pub fn close_boundary(r: f64, guess: f64, n: f64, v: f64) -> Result<(f64, Vec<f64>)> {
    let tol = BC_TOLERANCE * r.abs().max(1.0);
    let g = |s: f64| {
        let y = bc_residual(Dual::cst(r), Dual::var(s), n, v);
        (y.v, y.d)
    };
    let mut s = guess;
    let (mut gv, mut gd) = g(s);
    let mut history = vec![gv.abs()];
    for _ in 0..NEWTON_MAX_ITER {
        if gv.abs() <= tol {
            return Ok((s, history));
        }
        if !(gd.is_finite() && gd != 0.0) {
            break;
        }
        let mut step = -gv / gd;
        let mut trial = s + step;
        let mut tg = g(trial);
        for _ in 0..NEWTON_HALVINGS {
            if tg.0.abs() < gv.abs() && tg.0.is_finite() {
                break;
            }
            step *= 0.5;
            trial = s + step;
            tg = g(trial);
        }
        if !tg.0.is_finite() || trial == s {
            break;
        }
        s = trial;
        (gv, gd) = tg;
        history.push(gv.abs());
    }
    if gv.abs() <= tol {
        return Ok((s, history));
    }
    Err(Error::BoundaryClosure { residual: gv.abs() })
}

/// `r_1 ← −s_1` and Newton closure for `s_M`, guessed from the current `s_M`.
pub fn apply_bcs(mut state: UnfoldedState, forcing: &Forcing) -> Result<(UnfoldedState, Closure)> {
    state.r[0] = -state.s[0];
    let m = state.last();
    let (n, v) = forcing.outer(state.tau, state.t);
    let (sm, hist) = close_boundary(state.r[m], state.s[m], n, v)?;
    state.s[m] = sm;
    if !(state.eta(m) > 0.0) {
        return Err(Error::NonPhysical("vanishing elevation behind the shock"));
    }
    let closure = Closure { residual: *hist.last().unwrap_or(&0.0), iterations: hist.len() - 1 };
    Ok((state, closure))
}

/// One row of the centreline history.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CenterlineRecord {
    /// `log x_s`.
    pub tau: f64,
    /// Shifted time.
    pub t: f64,
    /// Shock position.
    pub xs: f64,
    /// `η(0, t)`.
    pub eta0: f64,
    /// `u_x(0, t)`.
    pub ux0: f64,
    /// `η_xx(0, t)`.
    pub etaxx0: f64,
}

/// Centreline values of a state.
pub fn centerline(state: &UnfoldedState, col: &Collocation) -> CenterlineRecord {
    let m = col.len();
    let eta: Vec<f64> = (0..m).map(|i| state.eta(i)).collect();
    let u: Vec<f64> = (0..m).map(|i| state.u(i)).collect();
    let du = col.d.apply(&u);
    let d2eta = col.d.apply(&col.d.apply(&eta));
    let xs = state.xs();
    CenterlineRecord { tau: state.tau, t: state.t, xs, eta0: eta[0], ux0: du[0] / xs, etaxx0: d2eta[0] / (xs * xs) }
}

/// Shock-fitting run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ShockfitConfig {
    /// Post-collapse family.
    pub kind: Scenario,
    /// Parameters.
    pub params: ScenarioParams,
    /// Number of collocation points.
    pub m: usize,
    /// Step in `τ`.
    pub h: f64,
    /// Starting `τ`, `log` of the initial shock position.
    pub tau0: f64,
    /// Final `τ`.
    pub tau_end: f64,
    /// Stop early once the shifted time reaches this value.
    pub t_stop: Option<f64>,
    /// Integrator.
    pub scheme: Scheme,
    /// Keep a centreline record every this many steps.
    pub record_stride: usize,
    /// Shifted times at which to keep full states (interpolated between steps).
    pub snapshot_times: Vec<f64>,
}

impl ShockfitConfig {
    /// `M = 64`, `h = 1e-4`, RK4, `x_s0 = 1e-8`.
    pub fn new(kind: Scenario, params: ScenarioParams, tau_end: f64) -> Self {
        ShockfitConfig {
            kind,
            params,
            m: 64,
            h: 1e-4,
            tau0: ln(1e-8),
            tau_end,
            t_stop: None,
            scheme: Scheme::Rk4,
            record_stride: 10,
            snapshot_times: Vec::new(),
        }
    }
}

/// Burn-in window in `τ` during which start-up transients dominate.
pub const BURN_IN: f64 = 4.0;

/// Output of [`run_shockfit`].
#[derive(Debug, Clone)]
pub struct Trajectory {
    /// Grid used.
    pub grid: Vec<f64>,
    /// Centreline history, `t` strictly increasing.
    pub records: Vec<CenterlineRecord>,
    /// States at the requested snapshot times, in the order requested
    /// (times beyond the run are skipped).
    pub snapshots: Vec<UnfoldedState>,
    /// Final state.
    pub last: UnfoldedState,
    /// Largest boundary residual after closure.
    pub max_bc_residual: f64,
    /// Smallest nodal elevation seen.
    pub min_eta: f64,
    /// Inner elevation at collapse.
    pub qstar: f64,
    /// Initial shock speed.
    pub s0: f64,
    /// Starting `τ`.
    pub tau0: f64,
}

impl Trajectory {
    /// Records after the burn-in window.
    pub fn trusted(&self) -> impl Iterator<Item = &CenterlineRecord> {
        let start = self.tau0 + BURN_IN;
        self.records.iter().filter(move |r| r.tau >= start)
    }

    /// Linear interpolation of the centreline history at `τ`.
    pub fn at_tau(&self, tau: f64) -> Option<CenterlineRecord> {
        interpolate(&self.records, tau, |r| r.tau)
    }

    /// Linear interpolation of the centreline history at shifted time `t`.
    pub fn at_time(&self, t: f64) -> Option<CenterlineRecord> {
        interpolate(&self.records, t, |r| r.t)
    }
}

fn interpolate(recs: &[CenterlineRecord], x: f64, key: impl Fn(&CenterlineRecord) -> f64) -> Option<CenterlineRecord> {
    let k = recs.partition_point(|r| key(r) < x);
    if k == 0 {
        return recs.first().filter(|r| key(r) == x).copied();
    }
    if k == recs.len() {
        return None;
    }
    let (a, b) = (&recs[k - 1], &recs[k]);
    let w = (x - key(a)) / (key(b) - key(a));
    let l = |p: f64, q: f64| p + w * (q - p);
    Some(CenterlineRecord {
        tau: l(a.tau, b.tau),
        t: l(a.t, b.t),
        xs: l(a.xs, b.xs),
        eta0: l(a.eta0, b.eta0),
        ux0: l(a.ux0, b.ux0),
        etaxx0: l(a.etaxx0, b.etaxx0),
    })
}

fn blend(a: &UnfoldedState, b: &UnfoldedState, w: f64) -> UnfoldedState {
    let l = |p: f64, q: f64| p + w * (q - p);
    UnfoldedState {
        tau: l(a.tau, b.tau),
        t: l(a.t, b.t),
        r: a.r.iter().zip(&b.r).map(|(p, q)| l(*p, *q)).collect(),
        s: a.s.iter().zip(&b.s).map(|(p, q)| l(*p, *q)).collect(),
    }
}

/// Integrates from `τ0` to `τ_end`.
pub fn run_shockfit(cfg: &ShockfitConfig) -> Result<Trajectory> {
    if !(cfg.tau_end > cfg.tau0) {
        return Err(Error::Domain("tau_end must exceed tau0"));
    }
    let forcing = Forcing::new(cfg.kind, cfg.params)?;
    let col = Collocation::new(cfg.m)?;
    let steps = libm::ceil((cfg.tau_end - cfg.tau0) / cfg.h - 1e-9).max(1.0) as usize;
    let h = (cfg.tau_end - cfg.tau0) / steps as f64;
    let stride = cfg.record_stride.max(1);

    let mut order: Vec<usize> = (0..cfg.snapshot_times.len()).collect();
    order.sort_by(|&a, &b| cfg.snapshot_times[a].total_cmp(&cfg.snapshot_times[b]));
    let mut snaps: Vec<Option<UnfoldedState>> = vec![None; cfg.snapshot_times.len()];
    let mut next_snap = 0;

    let (mut state, first) = apply_bcs(UnfoldedState::initial(cfg.m, cfg.tau0, &forcing), &forcing)?;
    let mut max_res = first.residual;
    let mut min_eta = f64::INFINITY;
    let mut records = Vec::with_capacity(steps / stride + 2);
    records.push(centerline(&state, &col));
    for k in 1..=steps {
        let (next, closure) = advance(&state, &col, &forcing, h, cfg.scheme)?;
        max_res = max_res.max(closure.residual);
        for i in 0..cfg.m {
            let e = next.eta(i);
            if !(e > 0.0) {
                return Err(Error::NonPhysical("non-positive elevation at a collocation point"));
            }
            min_eta = min_eta.min(e);
        }
        if next.t <= state.t {
            return Err(Error::NonPhysical("physical time stopped increasing"));
        }
        while next_snap < order.len() && cfg.snapshot_times[order[next_snap]] <= next.t {
            let ts = cfg.snapshot_times[order[next_snap]];
            let w = ((ts - state.t) / (next.t - state.t)).clamp(0.0, 1.0);
            snaps[order[next_snap]] = Some(blend(&state, &next, w));
            next_snap += 1;
        }
        state = next;
        let stop = cfg.t_stop.is_some_and(|ts| state.t >= ts);
        if k % stride == 0 || k == steps || stop {
            records.push(centerline(&state, &col));
        }
        if stop {
            break;
        }
    }
    Ok(Trajectory {
        grid: col.xi,
        records,
        snapshots: snaps.into_iter().flatten().collect(),
        last: state,
        max_bc_residual: max_res,
        min_eta,
        qstar: forcing.qstar,
        s0: forcing.s0,
        tau0: cfg.tau0,
    })
}

/// Physical fields of a state on the mirrored grid `x ∈ [−x_s, x_s]`.
pub fn unfold_to_physical(state: &UnfoldedState, grid: &[f64]) -> FieldSnapshot {
    let m = grid.len();
    let xs = state.xs();
    let mut snap = FieldSnapshot {
        t: state.t,
        x: Vec::with_capacity(2 * m - 1),
        eta: Vec::with_capacity(2 * m - 1),
        u: Vec::with_capacity(2 * m - 1),
    };
    for i in (1..m).rev() {
        snap.x.push(-grid[i] * xs);
        snap.eta.push(state.eta(i));
        snap.u.push(-state.u(i));
    }
    for (i, &g) in grid.iter().enumerate() {
        snap.x.push(g * xs);
        snap.eta.push(state.eta(i));
        snap.u.push(if i == 0 { 0.0 } else { state.u(i) });
    }
    snap
}

/// Physical fields `(η, u)` of a state at `x`, `|x| ≤ x_s`, by polynomial
/// interpolation of the Riemann variables in `ξ`.
pub fn evaluate_physical(state: &UnfoldedState, grid: &[f64], x: f64) -> Result<(f64, f64)> {
    let xi = x.abs() / state.xs();
    if xi > 1.0 + 1e-12 {
        return Err(Error::Domain("point lies outside the shocks"));
    }
    let w = barycentric_weights(grid)?;
    let r = barycentric_eval(grid, &w, &state.r, xi);
    let s = barycentric_eval(grid, &w, &state.s, xi);
    let d = r - s;
    let u = 0.5 * (r + s);
    Ok((d * d / 16.0, if x < 0.0 { -u } else { u }))
}

/// Estimate of the full-case `F'(0)` from the centreline elevation at `τ_probe`:
/// `η̃(0,0) ≈ η̃(0,τ) e^{−2τ/3}`, `F'(0) = η̃(0,0)/(√Q*/s0)^{2/3}`.
pub fn extract_f1(traj: &Trajectory, tau_probe: f64) -> Result<f64> {
    let rec = traj.at_tau(tau_probe).ok_or(Error::Extraction("trajectory does not reach the probe"))?;
    f1_from_centerline(rec.eta0 - traj.qstar, tau_probe, traj.qstar, traj.s0)
}

/// The extrapolation behind [`extract_f1`] for a given `η̃(0, τ)`.
pub fn f1_from_centerline(eta_tilde: f64, tau: f64, qstar: f64, s0: f64) -> Result<f64> {
    if !(eta_tilde > 0.0) {
        return Err(Error::Extraction("centreline perturbation is not positive"));
    }
    let e00 = exp(ln(eta_tilde) - 2.0 * tau / 3.0);
    Ok(e00 / pow_two_thirds(sqrt(qstar) / s0))
}

/// Default probe for [`extract_f1`].
pub const F1_PROBE_TAU: f64 = -6.0;
