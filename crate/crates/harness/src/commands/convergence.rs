use std::time::Instant;

use airy_core::exact::{parabola_edge, presingularity_snapshot, sigma_from_time};
use airy_core::shock::qstar_of;
use airy_core::spectral::{barycentric_eval, barycentric_weights, run_shockfit, ShockfitConfig};
use airy_core::weno::{overshoot, run_weno, WenoConfig};
use airy_core::{Scenario, ScenarioParams};
use anyhow::Result;
use serde_json::json;

use super::{default_half_width, observed_orders, out_dir, params, splitting, write_run, Artifacts};
use crate::cli::{ConvergenceArgs, SolverArg};
use crate::output::Table;
use crate::{parallel, usage};

pub fn run(args: &ConvergenceArgs) -> Result<()> {
    let started = Instant::now();
    let artifacts = ladder(args)?;
    if let Some((_, t)) = artifacts.tables.first() {
        print!("{}", crate::output::render(t, args.output.format));
    }
    let kind: Scenario = args.scenario.into();
    let solver = format!("{:?}", args.solver).to_lowercase();
    let dir = out_dir(&args.output.out, &format!("convergence-{}-{solver}", kind.name()));
    write_run(&dir, "convergence", args, &artifacts, args.output.format, started)?;
    println!("{}", dir.display());
    Ok(())
}

pub fn ladder(args: &ConvergenceArgs) -> Result<Artifacts> {
    let kind: Scenario = args.scenario.into();
    let p = params(kind, &args.physical)?;
    if args.levels.len() < 2 || args.levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("--levels needs at least two increasing values"));
    }
    for v in [args.dt, args.t_end, args.x_max].into_iter().flatten() {
        if !(v > 0.0) {
            return Err(usage("--dt, --t-end and --x-max must be positive"));
        }
    }
    match (args.solver, kind.is_post_collapse()) {
        (SolverArg::Exact, _) => Err(usage("the exact solution has no refinement ladder")),
        (SolverArg::Weno, false) => weno_smooth(args, kind, &p),
        (SolverArg::Weno, true) => weno_overshoot(args, kind, &p),
        (SolverArg::Spectral, true) => spectral_self(args, kind, &p),
        (SolverArg::Spectral, false) => Err(usage("the spectral solver needs a post-collapse family")),
    }
}

/// Error against the closed form in the core `|x| < a(t)/2`, which stays
/// smooth and away from the splice points.
fn weno_smooth(args: &ConvergenceArgs, kind: Scenario, p: &ScenarioParams) -> Result<Artifacts> {
    let t = args.t_end.unwrap_or(0.1 * p.validity_limit());
    if t >= p.validity_limit() {
        return Err(usage("--t-end must precede the end of the closed-form solution"));
    }
    let l = args.x_max.unwrap_or_else(|| default_half_width(kind, p, t));
    let edge = parabola_edge(sigma_from_time(t, p.gamma0)?, p)?.0;
    let d0 = 2.0 * l / (args.levels[0] - 1) as f64;
    let results = parallel::map(&args.levels, args.output.jobs, |&m| -> Result<(f64, f64, f64)> {
        let d = 2.0 * l / (m - 1) as f64;
        let mut cfg = WenoConfig::new(kind, *p, (-l, l), m, t);
        // time error kept below the spatial one: h ∝ δ^{5/3}
        cfg.h = Some(args.dt.unwrap_or(0.2 * d0) * (d / d0).powf(5.0 / 3.0));
        cfg.splitting = splitting(args.splitting);
        cfg.record_stride = usize::MAX;
        let run = run_weno(&cfg)?;
        let exact = presingularity_snapshot(&run.last.x, t, p)?;
        let err = (0..run.last.x.len())
            .filter(|&i| run.last.x[i].abs() < 0.5 * edge)
            .map(|i| (run.last.eta[i] - exact.eta[i]).abs())
            .fold(0.0, f64::max);
        Ok((d, cfg.h.unwrap_or(0.0), err))
    });
    let results: Vec<_> = results.into_iter().collect::<Result<_>>()?;
    let ms: Vec<f64> = args.levels.iter().map(|&m| m as f64).collect();
    let errs: Vec<f64> = results.iter().map(|r| r.2).collect();
    let orders = observed_orders(&ms, &errs);
    let mut table = Table::new(&["M", "delta", "h", "max_err_core", "order"]);
    for k in 0..ms.len() {
        table.push(vec![ms[k], results[k].0, results[k].1, errs[k], orders[k]]);
    }
    Ok(Artifacts {
        tables: vec![("convergence".into(), table)],
        diagnostics: json!({ "t": t, "core_half_width": 0.5 * edge, "last_order": orders.last() }),
    })
}

/// Centreline overshoot above `Q*` with `h ∝ δ`.
fn weno_overshoot(args: &ConvergenceArgs, kind: Scenario, p: &ScenarioParams) -> Result<Artifacts> {
    let t = args.t_end.unwrap_or(0.06);
    let l = args.x_max.unwrap_or_else(|| default_half_width(kind, p, t));
    let qs = qstar_of(p.q)?;
    let m0 = args.levels[0] as f64;
    let results = parallel::map(&args.levels, args.output.jobs, |&m| -> Result<_> {
        let mut cfg = WenoConfig::new(kind, *p, (-l, l), m, t);
        cfg.h = Some(args.dt.unwrap_or(1e-4) * m0 / m as f64);
        cfg.splitting = splitting(args.splitting);
        let run = run_weno(&cfg)?;
        Ok((run.last.delta(), cfg.h.unwrap_or(0.0), overshoot(&run.series, qs)))
    });
    let results: Vec<_> = results.into_iter().collect::<Result<_>>()?;
    let mut table = Table::new(&["M", "delta", "h", "amplitude", "t_peak", "support"]);
    for (m, (d, h, o)) in args.levels.iter().zip(&results) {
        table.push(vec![*m as f64, *d, *h, o.amplitude, o.t_peak, o.support]);
    }
    Ok(Artifacts { tables: vec![("overshoot".into(), table)], diagnostics: json!({ "qstar": qs, "t_end": t }) })
}

/// Unfolded fields at the final `τ`, interpolated onto the finest grid and
/// compared with the finest level.
fn spectral_self(args: &ConvergenceArgs, kind: Scenario, p: &ScenarioParams) -> Result<Artifacts> {
    let tau_end = args.tau_end.unwrap_or(-3.0);
    let results = parallel::map(&args.levels, args.output.jobs, |&m| -> Result<_> {
        let mut cfg = ShockfitConfig::new(kind, *p, tau_end);
        cfg.m = m;
        if let Some(h) = args.dt {
            cfg.h = h;
        }
        let traj = run_shockfit(&cfg)?;
        Ok((traj.grid, traj.last))
    });
    let results: Vec<_> = results.into_iter().collect::<Result<_>>()?;
    let (rgrid, rstate) = results.last().expect("two levels");
    let n = rgrid.len();
    let reta: Vec<f64> = (0..n).map(|i| rstate.eta(i)).collect();
    let ru: Vec<f64> = (0..n).map(|i| rstate.u(i)).collect();
    let scale = reta.iter().map(|e| (e - reta[0]).abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut table = Table::new(&["modes", "xs", "err_eta", "err_u", "err_eta_rel_variation"]);
    for (m, (grid, state)) in args.levels.iter().zip(&results) {
        let w = barycentric_weights(grid)?;
        let (mut de, mut du) = (0.0f64, 0.0f64);
        for i in 0..n {
            let r = barycentric_eval(grid, &w, &state.r, rgrid[i]);
            let s = barycentric_eval(grid, &w, &state.s, rgrid[i]);
            de = de.max(((r - s) * (r - s) / 16.0 - reta[i]).abs());
            du = du.max((0.5 * (r + s) - ru[i]).abs());
        }
        table.push(vec![*m as f64, state.xs(), de, du, de / scale]);
    }
    Ok(Artifacts {
        tables: vec![("self_convergence".into(), table)],
        diagnostics: json!({ "tau_end": tau_end, "reference_modes": args.levels.last() }),
    })
}
