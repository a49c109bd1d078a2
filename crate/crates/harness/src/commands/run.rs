use std::time::Instant;

use airy_core::asymptotics::{centerline_prediction, Coords};
use airy_core::exact::{parabola_edge, parabola_state, presingularity_snapshot, shoulder_outer_edge, sigma_from_time};
use airy_core::shock::{double_riemann_solution, qstar_of};
use airy_core::spectral::{extract_f1, run_shockfit, unfold_to_physical, ShockfitConfig, Trajectory};
use airy_core::weno::{locate_shock, overshoot, run_weno, WenoConfig, WenoRun};
use airy_core::{Scenario, ScenarioParams};
use anyhow::Result;
use serde_json::json;

use super::{default_half_width, inner_profile, out_dir, params, splitting, theory, write_run, Artifacts};
use crate::cli::{RunArgs, SolverArg};
use crate::output::{snapshot_stem, Table};
use crate::usage;

pub fn run(args: &RunArgs) -> Result<()> {
    let started = Instant::now();
    let artifacts = execute(args)?;
    let kind: Scenario = args.scenario.into();
    let solver = format!("{:?}", args.solver).to_lowercase();
    let dir = out_dir(&args.output.out, &format!("{}-{solver}", kind.name()));
    write_run(&dir, "run", args, &artifacts, args.output.format, started)?;
    println!("{}", dir.display());
    Ok(())
}

pub fn execute(args: &RunArgs) -> Result<Artifacts> {
    let kind: Scenario = args.scenario.into();
    let p = params(kind, &args.physical)?;
    for (name, v) in [("--dt", args.dt), ("--t-end", args.t_end), ("--x-max", args.x_max)] {
        if v.is_some_and(|v| !(v > 0.0 && v.is_finite())) {
            return Err(usage(format!("{name} must be positive")));
        }
    }
    if args.times.iter().any(|t| !t.is_finite()) {
        return Err(usage("--times must be finite"));
    }
    match args.solver {
        SolverArg::Exact => exact(args, kind, &p),
        SolverArg::Spectral => spectral(args, kind, &p),
        SolverArg::Weno => weno(args, kind, &p),
    }
}

fn exact(args: &RunArgs, kind: Scenario, p: &ScenarioParams) -> Result<Artifacts> {
    let n = args.m.unwrap_or(801).max(2);
    match kind {
        Scenario::DryParabola | Scenario::WetParabola => {
            let limit = p.validity_limit();
            let t_end = args.t_end.unwrap_or(0.999 * limit);
            if t_end >= limit {
                return Err(usage(format!("--t-end must be below the validity limit {limit}")));
            }
            if let Some(t) = args.times.iter().find(|&&t| t < 0.0 || t >= limit) {
                return Err(usage(format!("snapshot time {t} outside [0, {limit})")));
            }
            let t_max = args.times.iter().copied().fold(t_end, f64::max);
            let l = args.x_max.unwrap_or_else(|| default_half_width(kind, p, t_max));
            let x = grid(l, n);
            let mut tables = Vec::new();
            let mut series = Table::new(&["t", "eta0", "sigma", "nu", "gamma", "mu", "a", "b"]);
            let rows = args.stride.map_or(400, |s| s.max(2));
            for k in 0..=rows {
                let t = t_end * k as f64 / rows as f64;
                let sigma = sigma_from_time(t, p.gamma0)?;
                let st = parabola_state(sigma, p)?;
                let a = parabola_edge(sigma, p)?.0;
                series.push(vec![t, st.mu, st.sigma, st.nu, st.gamma, st.mu, a, shoulder_outer_edge(t, p)]);
            }
            tables.push(("series".to_string(), series));
            for &t in &args.times {
                let snap = presingularity_snapshot(&x, t, p)?;
                tables.push((snapshot_stem(t), fields(&snap.x, &snap.eta, &snap.u)));
            }
            Ok(Artifacts {
                tables,
                diagnostics: json!({ "collapse_time": p.collapse_time(), "validity_limit": limit, "a0": p.a0() }),
            })
        }
        Scenario::DoubleRiemann => {
            let l = args.x_max.unwrap_or(1.0);
            let x = grid(l, n);
            let q = p.q;
            let t_end = args.t_end.unwrap_or(1.0);
            let s0 = airy_core::shock::initial_shock_speed(q)?;
            let mut series = Table::new(&["t", "eta0", "xs"]);
            for k in 0..=200 {
                let t = t_end * k as f64 / 200.0;
                series.push(vec![t, double_riemann_solution(0.0, t, q, 0.0)?.0, s0 * t]);
            }
            let mut tables = vec![("series".to_string(), series)];
            for &t in &args.times {
                let mut eta = Vec::with_capacity(n);
                let mut u = Vec::with_capacity(n);
                for &xi in &x {
                    let (e, v) = double_riemann_solution(xi, t, q, 0.0)?;
                    eta.push(e);
                    u.push(v);
                }
                tables.push((snapshot_stem(t), fields(&x, &eta, &u)));
            }
            Ok(Artifacts { tables, diagnostics: json!({ "qstar": qstar_of(q)?, "s0": s0 }) })
        }
        Scenario::DoubleStoker | Scenario::Full => {
            Err(usage(format!("no closed-form solution for {}; use --solver spectral or weno", kind.name())))
        }
    }
}

fn grid(l: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| -l + 2.0 * l * i as f64 / (n - 1) as f64).collect()
}

fn fields(x: &[f64], eta: &[f64], u: &[f64]) -> Table {
    let mut t = Table::new(&["x", "eta", "u", "m"]);
    for i in 0..x.len() {
        t.push(vec![x[i], eta[i], u[i], eta[i] * u[i]]);
    }
    t
}

/// Shock-fitting configuration from run arguments.
pub fn shockfit_config(args: &RunArgs, kind: Scenario, p: &ScenarioParams) -> Result<ShockfitConfig> {
    if !kind.is_post_collapse() {
        return Err(usage(format!("the spectral solver starts at the collapse; {} is pre-collapse", kind.name())));
    }
    let s0 = airy_core::shock::initial_shock_speed(p.q)?;
    let mut cfg = ShockfitConfig::new(kind, *p, args.tau_end.unwrap_or(-3.0));
    if let Some(t) = args.t_end {
        // τ reached at t is about log(s0 t); stop on t itself
        cfg.tau_end = args.tau_end.unwrap_or((4.0 * s0 * t).ln());
        cfg.t_stop = Some(t);
    }
    if let Some(m) = args.modes {
        cfg.m = m;
    }
    if let Some(h) = args.dt {
        cfg.h = h;
    }
    if let Some(t0) = args.tau0 {
        cfg.tau0 = t0;
    }
    if !(cfg.tau_end > cfg.tau0) {
        return Err(usage("final τ must exceed --tau0"));
    }
    if cfg.m < 3 {
        return Err(usage("--modes must be at least 3"));
    }
    cfg.record_stride = args.stride.unwrap_or(10);
    cfg.snapshot_times = args.times.clone();
    Ok(cfg)
}

fn spectral(args: &RunArgs, kind: Scenario, p: &ScenarioParams) -> Result<Artifacts> {
    let cfg = shockfit_config(args, kind, p)?;
    let traj = run_shockfit(&cfg)?;
    let c = theory(kind, p)?.expect("post-collapse family");
    let mut series =
        Table::new(&["tau", "t", "xs", "eta0", "ux0", "etaxx0", "xs_th", "eta0_th", "ux0_th", "etaxx0_th"]);
    for r in &traj.records {
        let (e, ux, exx) = if r.t > 0.0 { centerline_prediction(&c, r.t) } else { (f64::NAN, f64::NAN, f64::NAN) };
        series.push(vec![r.tau, r.t, r.xs, r.eta0, r.ux0, r.etaxx0, c.shock_position(r.t), c.qstar + e, ux, exx]);
    }
    let mut tables = vec![("series".to_string(), series)];
    let reached: Vec<f64> = args.times.iter().copied().filter(|&t| t <= traj.last.t).collect();
    if reached.is_empty() {
        tables.push((snapshot_stem(traj.last.t), spectral_snapshot(&traj, &traj.last, &c)));
    } else {
        for (t, state) in reached.iter().zip(&traj.snapshots) {
            tables.push((snapshot_stem(*t), spectral_snapshot(&traj, state, &c)));
        }
    }
    let f1 = (kind == Scenario::Full).then(|| extract_f1(&traj, airy_core::spectral::F1_PROBE_TAU).ok()).flatten();
    Ok(Artifacts {
        tables,
        diagnostics: json!({
            "qstar": traj.qstar,
            "s0": traj.s0,
            "tau_reached": traj.last.tau,
            "t_reached": traj.last.t,
            "max_bc_residual": traj.max_bc_residual,
            "min_eta": traj.min_eta,
            "f1_probe": f1,
            "f1_theory": c.f1,
        }),
    })
}

fn spectral_snapshot(
    traj: &Trajectory,
    state: &airy_core::spectral::UnfoldedState,
    c: &airy_core::asymptotics::AsymptoticCoefficients,
) -> Table {
    let snap = unfold_to_physical(state, &traj.grid);
    let xs = state.xs();
    let mut t = Table::new(&["xi", "x", "eta", "u", "eta_th", "u_th", "eta_tilde", "eta_tilde_th", "u_unfolded_th"]);
    for i in 0..snap.x.len() {
        let x = snap.x[i];
        let xi = (x / xs).clamp(-1.0, 1.0);
        let (eth, uth) = inner_profile(c, Coords::Physical { x, t: state.t });
        let (etu, uu) = inner_profile(c, Coords::Unfolded { xi, tau: state.tau });
        t.push(vec![xi, x, snap.eta[i], snap.u[i], eth, uth, snap.eta[i] - traj.qstar, etu, uu]);
    }
    t
}

/// WENO configuration from run arguments.
pub fn weno_config(args: &RunArgs, kind: Scenario, p: &ScenarioParams) -> Result<WenoConfig> {
    let t_end = args.t_end.unwrap_or(match kind {
        Scenario::DryParabola | Scenario::WetParabola => 0.5 * p.validity_limit(),
        Scenario::DoubleRiemann => 1.0,
        Scenario::DoubleStoker | Scenario::Full => 0.05,
    });
    let l = args.x_max.unwrap_or_else(|| default_half_width(kind, p, t_end));
    let m = args.m.unwrap_or(1024);
    if m < 8 {
        return Err(usage("--M must be at least 8"));
    }
    let mut cfg = WenoConfig::new(kind, *p, (-l, l), m, t_end);
    cfg.h = args.dt;
    cfg.snapshot_times = args.times.clone();
    cfg.record_stride = args.stride.unwrap_or(1);
    cfg.splitting = splitting(args.splitting);
    Ok(cfg)
}

fn weno(args: &RunArgs, kind: Scenario, p: &ScenarioParams) -> Result<Artifacts> {
    let cfg = weno_config(args, kind, p)?;
    let run = run_weno(&cfg)?;
    Ok(weno_artifacts(&cfg, &run, kind, p))
}

pub fn weno_artifacts(cfg: &WenoConfig, run: &WenoRun, kind: Scenario, p: &ScenarioParams) -> Artifacts {
    let mut series = Table::new(&["t", "eta0", "xs_est"]);
    for r in &run.series {
        series.push(vec![r.t, r.eta0, r.xs_est]);
    }
    let mut tables = vec![("series".to_string(), series)];
    let snaps: Vec<_> = if run.snapshots.is_empty() { vec![&run.last] } else { run.snapshots.iter().collect() };
    for g in snaps {
        let s = g.to_snapshot(run.floor);
        tables.push((snapshot_stem(g.t), fields(&s.x, &s.eta, &s.u)));
    }
    let shock = locate_shock(&run.last, run.floor).ok().map(|s| json!({ "x": s.x, "uncertainty": s.uncertainty }));
    let mut diagnostics = json!({
        "clamps": run.clamps,
        "conservation_drift": run.conservation_drift,
        "floor": run.floor,
        "steps_recorded": run.series.len(),
        "delta": run.last.delta(),
        "domain": [cfg.domain.0, cfg.domain.1],
        "final_shock": shock,
    });
    if kind.is_post_collapse() {
        if let Ok(qs) = qstar_of(p.q) {
            let o = overshoot(&run.series, qs);
            diagnostics["qstar"] = json!(qs);
            diagnostics["overshoot"] = json!({ "amplitude": o.amplitude, "t_peak": o.t_peak, "support": o.support });
        }
    }
    Artifacts { tables, diagnostics }
}
