//! Fifth-order WENO finite-difference shock capturing for the conservative
//! form
//!
//! ```text
//! η_t + G_x = 0,   m_t + L_x = 0,     G = m,   L = m²/η + η²/2,   m = ηu
//! ```
//!
//! with global Lax–Friedrichs flux splitting, Jiang–Shu weights and SSP-RK3
//! in time. Three ghost nodes per side hold the initial data.

use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{FieldSnapshot, ScenarioParams};
use crate::math::sqrt;
use crate::scenarios::{initial_state, Scenario};
use crate::{Error, Result};

/// Regularisation in the smoothness weights.
pub const WENO_EPS: f64 = 1e-6;
/// Linear weights of the three candidate stencils (upwind first).
pub const LINEAR_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];
/// Courant number used to check steps.
pub const CFL: f64 = 0.4;
/// `η_floor = FLOOR_FACTOR · Q`.
pub const FLOOR_FACTOR: f64 = 1e-12;

const GHOSTS: usize = 3;

/// Fluxes `(G, L)` at `(η, m)`; `η` below `floor` is replaced by `floor`,
/// and the flag reports whether that happened.
pub fn conservative_flux(eta: f64, m: f64, floor: f64) -> (f64, f64, bool) {
    let clamped = eta < floor;
    let e = if clamped { floor } else { eta };
    (m, m * m / e + 0.5 * e * e, clamped)
}

/// Lax–Friedrichs split `((G+, G−), (L+, L−))`.
///
/// Each flux is split against its own conserved variable:
/// `G± = (G ± αη)/2`, `L± = (L ± αm)/2`.
pub fn lf_split(g: f64, l: f64, eta: f64, m: f64, alpha: f64) -> ((f64, f64), (f64, f64)) {
    ((0.5 * (g + alpha * eta), 0.5 * (g - alpha * eta)), (0.5 * (l + alpha * m), 0.5 * (l - alpha * m)))
}

/// Largest characteristic speed `|u| + √η` at a node.
pub fn max_wave_speed(eta: f64, m: f64, floor: f64) -> f64 {
    let e = eta.max(floor);
    (m / e).abs() + sqrt(e)
}

/// Which way the reconstruction is biased.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `v = f(x_{i−2..i+2})`, value at `x_{i+1/2}` from the left.
    Plus,
    /// `v = f(x_{i−1..i+3})`, value at `x_{i+1/2}` from the right.
    Minus,
}

/// Nonlinear weights for a left-biased stencil `v0..v4`.
pub fn weno5_weights(v: &[f64; 5]) -> [f64; 3] {
    let [a, b, c, d, e] = *v;
    let b0 =
        13.0 / 12.0 * (a - 2.0 * b + c) * (a - 2.0 * b + c) + 0.25 * (a - 4.0 * b + 3.0 * c) * (a - 4.0 * b + 3.0 * c);
    let b1 = 13.0 / 12.0 * (b - 2.0 * c + d) * (b - 2.0 * c + d) + 0.25 * (b - d) * (b - d);
    let b2 =
        13.0 / 12.0 * (c - 2.0 * d + e) * (c - 2.0 * d + e) + 0.25 * (3.0 * c - 4.0 * d + e) * (3.0 * c - 4.0 * d + e);
    let w0 = LINEAR_WEIGHTS[0] / ((WENO_EPS + b0) * (WENO_EPS + b0));
    let w1 = LINEAR_WEIGHTS[1] / ((WENO_EPS + b1) * (WENO_EPS + b1));
    let w2 = LINEAR_WEIGHTS[2] / ((WENO_EPS + b2) * (WENO_EPS + b2));
    let s = w0 + w1 + w2;
    [w0 / s, w1 / s, w2 / s]
}

#[inline]
fn weno5_left(v: &[f64; 5]) -> f64 {
    let [a, b, c, d, e] = *v;
    let q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
    let q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
    let q2 = (2.0 * c + 5.0 * d - e) / 6.0;
    let [w0, w1, w2] = weno5_weights(v);
    w0 * q0 + w1 * q1 + w2 * q2
}

/// WENO5 interface value at `x_{i+1/2}` from five nodal values.
pub fn weno5_reconstruct(v: &[f64; 5], dir: Direction) -> f64 {
    match dir {
        Direction::Plus => weno5_left(v),
        Direction::Minus => weno5_left(&[v[4], v[3], v[2], v[1], v[0]]),
    }
}

/// Nodal conserved variables on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedGrid {
    /// Node positions.
    pub x: Vec<f64>,
    /// Elevation.
    pub eta: Vec<f64>,
    /// Momentum `ηu`.
    pub m: Vec<f64>,
    /// Time.
    pub t: f64,
}

impl ConservedGrid {
    /// Spacing.
    pub fn delta(&self) -> f64 {
        (self.x[self.x.len() - 1] - self.x[0]) / (self.x.len() - 1) as f64
    }

    /// Velocity at node `i` (zero where `η` is at the floor).
    pub fn u(&self, i: usize, floor: f64) -> f64 {
        if self.eta[i] <= floor {
            0.0
        } else {
            self.m[i] / self.eta[i]
        }
    }

    /// `η` at `x = 0`: the middle node, or the mean of the two middle nodes.
    pub fn centerline_eta(&self) -> f64 {
        let n = self.x.len();
        if n % 2 == 1 {
            self.eta[n / 2]
        } else {
            0.5 * (self.eta[n / 2 - 1] + self.eta[n / 2])
        }
    }

    /// Total mass `Σ η δ`.
    pub fn mass(&self) -> f64 {
        self.eta.iter().sum::<f64>() * self.delta()
    }

    /// Total momentum `Σ m δ`.
    pub fn momentum(&self) -> f64 {
        self.m.iter().sum::<f64>() * self.delta()
    }

    /// Primitive fields.
    pub fn to_snapshot(&self, floor: f64) -> FieldSnapshot {
        FieldSnapshot {
            t: self.t,
            x: self.x.clone(),
            eta: self.eta.clone(),
            u: (0..self.x.len()).map(|i| self.u(i, floor)).collect(),
        }
    }
}

/// Uniform grid on `[lo, hi]`; symmetric intervals give exactly mirrored nodes.
pub fn uniform_grid(lo: f64, hi: f64, m: usize) -> Result<Vec<f64>> {
    if m < 2 || !(hi > lo) {
        return Err(Error::Domain("need at least two nodes on a non-empty interval"));
    }
    let n = (m - 1) as f64;
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    Ok((0..m).map(|i| c + h * ((2 * i) as f64 - n) / n).collect())
}

/// How the split fluxes are reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    /// WENO applied to `G±`, `L±` directly.
    Componentwise,
    /// WENO applied to the split fluxes projected on the eigenvectors of the
    /// Jacobian at the interface (arithmetic mean state), then mapped back.
    /// Falls back to component-wise reconstruction where the mean state is
    /// nearly dry.
    Characteristic,
}

/// Semi-discrete operator with fixed ghost states.
#[derive(Debug, Clone)]
pub struct WenoOperator {
    delta: f64,
    floor: f64,
    left_ghost: [(f64, f64); GHOSTS],
    right_ghost: [(f64, f64); GHOSTS],
    gp: Vec<f64>,
    gm: Vec<f64>,
    lp: Vec<f64>,
    lm: Vec<f64>,
    gh: Vec<f64>,
    lh: Vec<f64>,
    he: Vec<f64>,
    ue: Vec<f64>,
    clamps: u64,
    splitting: Splitting,
}

/// Boundary and time-step information from one operator evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhsInfo {
    /// Global splitting speed.
    pub alpha: f64,
    /// Interface fluxes `(Ĝ, L̂)` at the left boundary `x_{−1/2}`.
    pub left_flux: (f64, f64),
    /// Interface fluxes `(Ĝ, L̂)` at the right boundary `x_{M−1/2}`.
    pub right_flux: (f64, f64),
}

impl WenoOperator {
    /// Operator for `grid`, ghost nodes taken from `ghost(x)` at the three
    /// positions beyond each end.
    pub fn new(grid: &ConservedGrid, floor: f64, ghost: impl Fn(f64) -> (f64, f64)) -> Self {
        let n = grid.x.len();
        let d = grid.delta();
        let (x0, x1) = (grid.x[0], grid.x[n - 1]);
        let mut left_ghost = [(0.0, 0.0); GHOSTS];
        let mut right_ghost = [(0.0, 0.0); GHOSTS];
        for k in 0..GHOSTS {
            // left_ghost[0] is the outermost node
            left_ghost[k] = ghost(x0 - (GHOSTS - k) as f64 * d);
            right_ghost[k] = ghost(x1 + (k + 1) as f64 * d);
        }
        let e = n + 2 * GHOSTS;
        WenoOperator {
            delta: d,
            floor,
            left_ghost,
            right_ghost,
            gp: vec![0.0; e],
            gm: vec![0.0; e],
            lp: vec![0.0; e],
            lm: vec![0.0; e],
            gh: vec![0.0; n + 1],
            lh: vec![0.0; n + 1],
            he: vec![0.0; e],
            ue: vec![0.0; e],
            clamps: 0,
            splitting: Splitting::Characteristic,
        }
    }

    /// Selects the reconstruction variables.
    pub fn with_splitting(mut self, splitting: Splitting) -> Self {
        self.splitting = splitting;
        self
    }

    /// Number of flux evaluations that hit the elevation floor so far.
    pub fn clamp_count(&self) -> u64 {
        self.clamps
    }

    fn ext(&self, eta: &[f64], m: &[f64], k: usize) -> (f64, f64) {
        let n = eta.len();
        if k < GHOSTS {
            self.left_ghost[k]
        } else if k < GHOSTS + n {
            (eta[k - GHOSTS], m[k - GHOSTS])
        } else {
            let (e, mm) = self.right_ghost[k - GHOSTS - n];
            (e, mm)
        }
    }

    /// `(dη/dt, dm/dt)` into `deta`, `dm`.
    pub fn rhs(&mut self, eta: &[f64], m: &[f64], deta: &mut [f64], dm: &mut [f64]) -> RhsInfo {
        let n = eta.len();
        let e = n + 2 * GHOSTS;
        let mut alpha: f64 = 0.0;
        for k in 0..e {
            let (h, q) = self.ext(eta, m, k);
            alpha = alpha.max(max_wave_speed(h, q, self.floor));
        }
        for k in 0..e {
            let (h, q) = self.ext(eta, m, k);
            let (g, l, c) = conservative_flux(h, q, self.floor);
            if c {
                self.clamps += 1;
            }
            let hg = h.max(self.floor);
            self.he[k] = hg;
            self.ue[k] = q / hg;
            let ((a, b), (cc, d)) = lf_split(g, l, hg, q, alpha);
            self.gp[k] = a;
            self.gm[k] = b;
            self.lp[k] = cc;
            self.lm[k] = d;
        }
        // interface j + 1/2 sits between extended nodes k = j + GHOSTS and k + 1
        let dry = 1e-8 * self.floor / FLOOR_FACTOR;
        for j in 0..=n {
            let k = j + GHOSTS - 1;
            let win = |v: &[f64]| [v[k - 2], v[k - 1], v[k], v[k + 1], v[k + 2]];
            let wm = |v: &[f64]| [v[k - 1], v[k], v[k + 1], v[k + 2], v[k + 3]];
            let ha = 0.5 * (self.he[k] + self.he[k + 1]);
            if self.splitting == Splitting::Componentwise || ha < dry {
                self.gh[j] = weno5_left(&win(&self.gp)) + weno5_reconstruct(&wm(&self.gm), Direction::Minus);
                self.lh[j] = weno5_left(&win(&self.lp)) + weno5_reconstruct(&wm(&self.lm), Direction::Minus);
                continue;
            }
            let ua = 0.5 * (self.ue[k] + self.ue[k + 1]);
            let c = sqrt(ha);
            let i2c = 0.5 / c;
            // left eigenvectors for u − c and u + c
            let l1 = ((ua + c) * i2c, -i2c);
            let l2 = (-(ua - c) * i2c, i2c);
            let mut p1 = [0.0; 6];
            let mut p2 = [0.0; 6];
            let mut m1 = [0.0; 6];
            let mut m2 = [0.0; 6];
            for (o, q) in (k - 2..=k + 3).enumerate() {
                p1[o] = l1.0 * self.gp[q] + l1.1 * self.lp[q];
                p2[o] = l2.0 * self.gp[q] + l2.1 * self.lp[q];
                m1[o] = l1.0 * self.gm[q] + l1.1 * self.lm[q];
                m2[o] = l2.0 * self.gm[q] + l2.1 * self.lm[q];
            }
            let lo = |v: &[f64; 6]| [v[0], v[1], v[2], v[3], v[4]];
            let hi = |v: &[f64; 6]| [v[1], v[2], v[3], v[4], v[5]];
            let w1 = weno5_left(&lo(&p1)) + weno5_reconstruct(&hi(&m1), Direction::Minus);
            let w2 = weno5_left(&lo(&p2)) + weno5_reconstruct(&hi(&m2), Direction::Minus);
            self.gh[j] = w1 + w2;
            self.lh[j] = (ua - c) * w1 + (ua + c) * w2;
        }
        let inv = 1.0 / self.delta;
        for i in 0..n {
            deta[i] = -(self.gh[i + 1] - self.gh[i]) * inv;
            dm[i] = -(self.lh[i + 1] - self.lh[i]) * inv;
        }
        RhsInfo { alpha, left_flux: (self.gh[0], self.lh[0]), right_flux: (self.gh[n], self.lh[n]) }
    }

    /// Largest stable step for the current state.
    pub fn step_limit(&self, grid: &ConservedGrid) -> f64 {
        let n = grid.x.len();
        let mut alpha: f64 = 0.0;
        for k in 0..n + 2 * GHOSTS {
            let (h, q) = self.ext(&grid.eta, &grid.m, k);
            alpha = alpha.max(max_wave_speed(h, q, self.floor));
        }
        CFL * self.delta / alpha
    }

    /// Semi-discrete right-hand side of `grid`.
    pub fn semidiscrete_rhs(&mut self, grid: &ConservedGrid) -> (Vec<f64>, Vec<f64>, RhsInfo) {
        let n = grid.x.len();
        let mut de = vec![0.0; n];
        let mut dm = vec![0.0; n];
        let info = self.rhs(&grid.eta, &grid.m, &mut de, &mut dm);
        (de, dm, info)
    }

    /// One SSP-RK3 step of size `h`. Returns the time-integrated boundary
    /// fluxes `(mass in, momentum in)` through both ends.
    pub fn ssp_rk3_step(&mut self, grid: &mut ConservedGrid, h: f64) -> Result<(f64, f64)> {
        let limit = self.step_limit(grid);
        if !(h > 0.0) || h > limit * (1.0 + 1e-12) {
            return Err(Error::Cfl { step: h, limit });
        }
        let n = grid.x.len();
        let mut de = vec![0.0; n];
        let mut dm = vec![0.0; n];
        let (e0, m0) = (grid.eta.clone(), grid.m.clone());

        let i1 = self.rhs(&e0, &m0, &mut de, &mut dm);
        let mut e1: Vec<f64> = (0..n).map(|i| e0[i] + h * de[i]).collect();
        let mut m1: Vec<f64> = (0..n).map(|i| m0[i] + h * dm[i]).collect();
        self.floor_clamp(&mut e1);

        let i2 = self.rhs(&e1, &m1, &mut de, &mut dm);
        let mut e2: Vec<f64> = (0..n).map(|i| 0.75 * e0[i] + 0.25 * (e1[i] + h * de[i])).collect();
        let mut m2: Vec<f64> = (0..n).map(|i| 0.75 * m0[i] + 0.25 * (m1[i] + h * dm[i])).collect();
        self.floor_clamp(&mut e2);

        let i3 = self.rhs(&e2, &m2, &mut de, &mut dm);
        for i in 0..n {
            e1[i] = e0[i] / 3.0 + 2.0 / 3.0 * (e2[i] + h * de[i]);
            m1[i] = m0[i] / 3.0 + 2.0 / 3.0 * (m2[i] + h * dm[i]);
        }
        self.floor_clamp(&mut e1);
        m2.clear();
        grid.eta = e1;
        grid.m = m1;
        grid.t += h;

        // same convex weights as the stages: 1/6, 1/6, 2/3
        let flux = |i: &RhsInfo| (i.left_flux.0 - i.right_flux.0, i.left_flux.1 - i.right_flux.1);
        let (a, b, c) = (flux(&i1), flux(&i2), flux(&i3));
        Ok((h * (a.0 + b.0 + 4.0 * c.0) / 6.0, h * (a.1 + b.1 + 4.0 * c.1) / 6.0))
    }

    fn floor_clamp(&mut self, eta: &mut [f64]) {
        for e in eta.iter_mut() {
            if *e < self.floor {
                *e = self.floor;
                self.clamps += 1;
            }
        }
    }
}

/// WENO run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct WenoConfig {
    /// Initial-data family.
    pub kind: Scenario,
    /// Parameters.
    pub params: ScenarioParams,
    /// Domain `[lo, hi]`.
    pub domain: (f64, f64),
    /// Number of nodes.
    pub m: usize,
    /// Time step; `None` picks the CFL limit each step.
    pub h: Option<f64>,
    /// Final time (shifted for post-collapse families).
    pub t_end: f64,
    /// Times at which to keep snapshots.
    pub snapshot_times: Vec<f64>,
    /// Keep a centreline row every this many steps.
    pub record_stride: usize,
    /// Reconstruction variables.
    pub splitting: Splitting,
}

impl WenoConfig {
    /// Defaults: adaptive step, every step recorded.
    pub fn new(kind: Scenario, params: ScenarioParams, domain: (f64, f64), m: usize, t_end: f64) -> Self {
        WenoConfig {
            kind,
            params,
            domain,
            m,
            h: None,
            t_end,
            snapshot_times: Vec::new(),
            record_stride: 1,
            splitting: Splitting::Characteristic,
        }
    }
}

/// Centreline history row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WenoRecord {
    /// Time.
    pub t: f64,
    /// `η(0, t)`.
    pub eta0: f64,
    /// Right shock position estimate, NaN when no shock is detected.
    pub xs_est: f64,
}

/// Output of [`run_weno`].
#[derive(Debug, Clone)]
pub struct WenoRun {
    /// Centreline history.
    pub series: Vec<WenoRecord>,
    /// Snapshots at the requested times (those reached), in request order.
    pub snapshots: Vec<ConservedGrid>,
    /// Final grid.
    pub last: ConservedGrid,
    /// Floor activations.
    pub clamps: u64,
    /// Largest relative drift of mass and momentum after accounting for
    /// boundary fluxes.
    pub conservation_drift: f64,
    /// Elevation floor.
    pub floor: f64,
}

/// Initial grid of a family on `[lo, hi]` with `m` nodes.
pub fn initial_grid(kind: Scenario, params: &ScenarioParams, domain: (f64, f64), m: usize) -> Result<ConservedGrid> {
    let x = uniform_grid(domain.0, domain.1, m)?;
    let mut eta = Vec::with_capacity(m);
    let mut mm = Vec::with_capacity(m);
    for &xi in &x {
        let (e, u) = initial_state(kind, xi, params)?;
        eta.push(e);
        mm.push(e * u);
    }
    Ok(ConservedGrid { x, eta, m: mm, t: 0.0 })
}

/// Runs the scheme from the family's initial data.
pub fn run_weno(cfg: &WenoConfig) -> Result<WenoRun> {
    let p = cfg.params;
    let floor = FLOOR_FACTOR * p.q;
    let mut grid = initial_grid(cfg.kind, &p, cfg.domain, cfg.m)?;
    let kind = cfg.kind;
    let ghost = |x: f64| {
        let (e, u) = initial_state(kind, x, &p).unwrap_or((p.q, 0.0));
        (e, e * u)
    };
    let mut op = WenoOperator::new(&grid, floor, ghost).with_splitting(cfg.splitting);

    let mut order: Vec<usize> = (0..cfg.snapshot_times.len()).collect();
    order.sort_by(|&a, &b| cfg.snapshot_times[a].total_cmp(&cfg.snapshot_times[b]));
    let mut snaps: Vec<Option<ConservedGrid>> = vec![None; cfg.snapshot_times.len()];
    let mut next_snap = 0;

    let (mass0, mom0) = (grid.mass(), grid.momentum());
    let (mut mass_in, mut mom_in) = (0.0, 0.0);
    let mut drift: f64 = 0.0;
    let stride = cfg.record_stride.max(1);
    let mut series = vec![record(&grid, floor)];
    let tol = 1e-14 * cfg.t_end.abs().max(1.0);
    let mut k = 0usize;
    loop {
        while next_snap < order.len() && cfg.snapshot_times[order[next_snap]] <= grid.t + tol {
            snaps[order[next_snap]] = Some(grid.clone());
            next_snap += 1;
        }
        if grid.t >= cfg.t_end - tol {
            break;
        }
        let mut h = match cfg.h {
            Some(h) => h,
            None => op.step_limit(&grid),
        };
        let mut target = cfg.t_end;
        if next_snap < order.len() {
            target = target.min(cfg.snapshot_times[order[next_snap]]);
        }
        if grid.t + h > target {
            h = target - grid.t;
        }
        let (dmass, dmom) = op.ssp_rk3_step(&mut grid, h)?;
        mass_in += dmass;
        mom_in += dmom;
        k += 1;
        if grid.eta.iter().chain(&grid.m).any(|v| !v.is_finite()) {
            return Err(Error::NonPhysical("non-finite value in the WENO state"));
        }
        if k % stride == 0 || grid.t >= cfg.t_end - tol {
            series.push(record(&grid, floor));
            let dm = (grid.mass() - mass0 - mass_in).abs() / mass0.abs().max(1e-300);
            let dp = (grid.momentum() - mom0 - mom_in).abs() / mom0.abs().max(mass0.abs());
            drift = drift.max(dm).max(dp);
        }
    }
    Ok(WenoRun {
        series,
        snapshots: snaps.into_iter().flatten().collect(),
        last: grid,
        clamps: op.clamp_count(),
        conservation_drift: drift,
        floor,
    })
}

fn record(grid: &ConservedGrid, floor: f64) -> WenoRecord {
    let xs = locate_shock(grid, floor).map(|s| s.x).unwrap_or(f64::NAN);
    WenoRecord { t: grid.t, eta0: grid.centerline_eta(), xs_est: xs }
}

/// Shock position estimate on the right half-line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockEstimate {
    /// Position.
    pub x: f64,
    /// Half-width of the uncertainty interval, `2δ`.
    pub uncertainty: f64,
}

/// Relative jump threshold for [`locate_shock`].
pub const SHOCK_THRESHOLD: f64 = 0.05;

/// Largest `|Δu|` on `x > 0`, refined by a parabola through the neighbouring
/// differences. A jump smaller than 5% of the range of `u` is not a shock.
pub fn locate_shock(grid: &ConservedGrid, floor: f64) -> Result<ShockEstimate> {
    let n = grid.x.len();
    let u: Vec<f64> = (0..n).map(|i| grid.u(i, floor)).collect();
    let (lo, hi) = u.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let range = hi - lo;
    let start = grid.x.partition_point(|&x| x <= 0.0);
    if start + 1 >= n || !(range > 0.0) {
        return Err(Error::NoShock);
    }
    let mut best = start;
    let mut jump = 0.0;
    for i in start..n - 1 {
        let d = (u[i + 1] - u[i]).abs();
        if d > jump {
            jump = d;
            best = i;
        }
    }
    if jump < SHOCK_THRESHOLD * range {
        return Err(Error::NoShock);
    }
    let delta = grid.delta();
    let mid = 0.5 * (grid.x[best] + grid.x[best + 1]);
    let mut x = mid;
    if best > start && best + 2 < n {
        let a = (u[best] - u[best - 1]).abs();
        let c = (u[best + 2] - u[best + 1]).abs();
        let den = a - 2.0 * jump + c;
        if den < 0.0 {
            x = mid + 0.5 * (a - c) / den * delta;
        }
    }
    Ok(ShockEstimate { x, uncertainty: 2.0 * delta })
}

/// Overshoot of the centreline elevation above the plateau `level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Overshoot {
    /// Largest `η(0,t) − level`.
    pub amplitude: f64,
    /// Time of the maximum.
    pub t_peak: f64,
    /// Length of the interval around the peak where the excess stays above
    /// half the amplitude.
    pub support: f64,
}

/// Overshoot of a centreline series over `level`.
pub fn overshoot(series: &[WenoRecord], level: f64) -> Overshoot {
    let mut k = 0;
    let mut amp = f64::NEG_INFINITY;
    for (i, r) in series.iter().enumerate() {
        if r.eta0 - level > amp {
            amp = r.eta0 - level;
            k = i;
        }
    }
    let half = 0.5 * amp;
    let mut a = k;
    while a > 0 && series[a - 1].eta0 - level > half {
        a -= 1;
    }
    let mut b = k;
    while b + 1 < series.len() && series[b + 1].eta0 - level > half {
        b += 1;
    }
    Overshoot { amplitude: amp, t_peak: series[k].t, support: series[b].t - series[a].t }
}
