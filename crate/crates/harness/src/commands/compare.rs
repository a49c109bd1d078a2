use std::time::Instant;

use airy_core::asymptotics::{centerline_prediction, AsymptoticCoefficients};
use airy_core::interp::Pchip;
use airy_core::shock::initial_shock_speed;
use airy_core::spectral::{evaluate_physical, run_shockfit, ShockfitConfig, Trajectory, UnfoldedState};
use airy_core::weno::{locate_shock, run_weno, ConservedGrid, WenoConfig};
use airy_core::Scenario;
use anyhow::{Context, Result};
use serde_json::json;

use super::{default_half_width, out_dir, params, splitting, theory, write_run, Artifacts};
use crate::cli::CompareArgs;
use crate::output::Table;
use crate::usage;

/// Recorded in the report: how the two time grids were matched.
pub const ALIGNMENT: &str =
    "spectral centreline records interpolated at WENO snapshot times by monotone cubic (Fritsch-Carlson) interpolation";

/// Number of WENO snapshots used for the centreline derivative series.
const CENTERLINE_SAMPLES: usize = 24;

pub fn run(args: &CompareArgs) -> Result<()> {
    let started = Instant::now();
    let artifacts = compare(args)?;
    let kind: Scenario = args.scenario.into();
    let dir = out_dir(&args.output.out, &format!("compare-{}", kind.name()));
    write_run(&dir, "compare", args, &artifacts, args.output.format, started)?;
    if let Some(t) = artifacts.table("profiles") {
        print!("{}", crate::output::render(t, args.output.format));
    }
    println!("{}", dir.display());
    Ok(())
}

/// `u_x(0)` and `η_xx(0)` by centred differences, second order for either
/// parity of the grid.
pub fn centerline_derivatives(g: &ConservedGrid, floor: f64) -> (f64, f64) {
    let n = g.x.len();
    let d = g.delta();
    let u = |i: usize| g.u(i, floor);
    if n % 2 == 1 {
        let c = n / 2;
        ((u(c + 1) - u(c - 1)) / (2.0 * d), (g.eta[c + 1] - 2.0 * g.eta[c] + g.eta[c - 1]) / (d * d))
    } else {
        // nodes at ±δ/2 and ±3δ/2
        let j = n / 2;
        ((u(j) - u(j - 1)) / d, (g.eta[j + 1] - g.eta[j] - g.eta[j - 1] + g.eta[j - 2]) / (2.0 * d * d))
    }
}

/// Largest differences of `η` and `u` between the WENO nodes and the spectral
/// interpolant, over `|x| ≤ x_s − exclude·δ`.
pub fn profile_difference(
    weno: &ConservedGrid,
    floor: f64,
    state: &UnfoldedState,
    grid: &[f64],
    exclude: f64,
) -> Result<(Table, f64, f64)> {
    let lim = state.xs() - exclude * weno.delta();
    let mut t = Table::new(&["x", "eta_weno", "eta_spectral", "u_weno", "u_spectral", "deta", "du"]);
    let (mut de, mut du) = (0.0f64, 0.0f64);
    for i in 0..weno.x.len() {
        let x = weno.x[i];
        if x.abs() > lim {
            continue;
        }
        let (es, us) = evaluate_physical(state, grid, x)?;
        let (ew, uw) = (weno.eta[i], weno.u(i, floor));
        de = de.max((ew - es).abs());
        du = du.max((uw - us).abs());
        t.push(vec![x, ew, es, uw, us, ew - es, uw - us]);
    }
    Ok((t, de, du))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn check(args: &CompareArgs) -> Result<()> {
    let kind: Scenario = args.scenario.into();
    if !kind.is_post_collapse() {
        return Err(usage("compare needs a post-collapse family"));
    }
    if !(args.t_end > 0.0) || args.times.iter().any(|&t| !(t > 0.0 && t <= args.t_end)) {
        return Err(usage("--times must lie in (0, --t-end]"));
    }
    if !(args.spectral_dt > 0.0) || args.dt.is_some_and(|h| !(h > 0.0)) || !(args.exclude >= 0.0) {
        return Err(usage("steps must be positive and --exclude non-negative"));
    }
    Ok(())
}

pub fn compare(args: &CompareArgs) -> Result<Artifacts> {
    check(args)?;
    let kind: Scenario = args.scenario.into();
    let p = params(kind, &args.physical)?;
    let c = theory(kind, &p)?.expect("post-collapse family");

    let mut scfg = ShockfitConfig::new(kind, p, (4.0 * initial_shock_speed(p.q)? * args.t_end).ln());
    scfg.m = args.modes;
    scfg.h = args.spectral_dt;
    if let Some(t0) = args.tau0 {
        scfg.tau0 = t0;
    }
    scfg.t_stop = Some(args.t_end);
    scfg.record_stride = 1;
    scfg.snapshot_times = args.times.clone();
    let traj = run_shockfit(&scfg).context("spectral run")?;

    let l = args.x_max.unwrap_or_else(|| default_half_width(kind, &p, args.t_end));
    let mut wcfg = WenoConfig::new(kind, p, (-l, l), args.m, args.t_end);
    wcfg.h = args.dt;
    wcfg.splitting = splitting(args.splitting);
    let samples: Vec<f64> =
        (1..=CENTERLINE_SAMPLES).map(|k| args.t_end * k as f64 / CENTERLINE_SAMPLES as f64).collect();
    wcfg.snapshot_times = args.times.iter().copied().chain(samples.iter().copied()).collect();
    wcfg.record_stride = 1;
    let wrun = run_weno(&wcfg).context("WENO run")?;
    let nt = args.times.len();

    let mut tables = Vec::new();
    let mut summary = Table::new(&["t", "xs_spectral", "xs_weno", "delta", "max_deta", "max_du", "digits"]);
    for (k, &t) in args.times.iter().enumerate() {
        let state = traj.snapshots.get(k).context("spectral run ended before a comparison time")?;
        let g = &wrun.snapshots[k];
        let (table, de, du) = profile_difference(g, wrun.floor, state, &traj.grid, args.exclude)?;
        let xw = locate_shock(g, wrun.floor).map(|s| s.x).unwrap_or(f64::NAN);
        summary.push(vec![t, state.xs(), xw, g.delta(), de, du, -de.max(du).log10()]);
        tables.push((format!("profile_{t}"), table));
    }
    let centre = centerline_table(&traj, &wrun.snapshots[nt..], wrun.floor, &c)?;
    // start-up transients of the captured solution dominate while x_s spans a few cells
    let t_from = 0.2 * args.t_end;
    let tcol = centre.column("t").unwrap_or_default();
    let mean = |name: &str| {
        let v: Vec<f64> = (centre.column(name).unwrap_or_default().into_iter())
            .zip(&tcol)
            .filter(|(v, t)| v.is_finite() && **t >= t_from)
            .map(|(v, _)| v)
            .collect();
        if v.is_empty() {
            f64::NAN
        } else {
            v.iter().sum::<f64>() / v.len() as f64
        }
    };
    let diagnostics = json!({
        "alignment": ALIGNMENT,
        "exclude_cells": args.exclude,
        "weno_clamps": wrun.clamps,
        "weno_conservation_drift": wrun.conservation_drift,
        "spectral_max_bc_residual": traj.max_bc_residual,
        "mean_window": [t_from, args.t_end],
        "mean_rel_err": {
            "eta_spectral": mean("err_eta_spectral"),
            "eta_weno": mean("err_eta_weno"),
            "ux_spectral": mean("err_ux_spectral"),
            "ux_weno": mean("err_ux_weno"),
            "etaxx_spectral": mean("err_etaxx_spectral"),
            "etaxx_weno": mean("err_etaxx_weno"),
        },
        "max_profile_difference": summary.rows.iter().map(|r| r[4].max(r[5])).fold(0.0, f64::max),
    });
    tables.insert(0, ("centerline".to_string(), centre));
    tables.insert(0, ("profiles".to_string(), summary));
    Ok(Artifacts { tables, diagnostics })
}

/// Relative errors of `η̃(0,t)`, `u_x(0,t)`, `η_xx(0,t)` against the
/// asymptotics for both solvers, at the WENO sample times.
pub fn centerline_table(
    traj: &Trajectory,
    samples: &[ConservedGrid],
    floor: f64,
    c: &AsymptoticCoefficients,
) -> Result<Table> {
    let recs: Vec<_> = traj.records.iter().filter(|r| r.t > 0.0).collect();
    let ts: Vec<f64> = recs.iter().map(|r| r.t).collect();
    let spline = |f: fn(&airy_core::spectral::CenterlineRecord) -> f64| {
        Pchip::new(ts.clone(), recs.iter().map(|r| f(r)).collect())
    };
    let (pe, pu, px) = (spline(|r| r.eta0)?, spline(|r| r.ux0)?, spline(|r| r.etaxx0)?);
    let t_last = ts.last().copied().unwrap_or(0.0);
    let mut t = Table::new(&[
        "t",
        "eta_spectral",
        "eta_weno",
        "eta_th",
        "ux_spectral",
        "ux_weno",
        "ux_th",
        "etaxx_spectral",
        "etaxx_weno",
        "etaxx_th",
        "err_eta_spectral",
        "err_eta_weno",
        "err_ux_spectral",
        "err_ux_weno",
        "err_etaxx_spectral",
        "err_etaxx_weno",
    ]);
    for g in samples {
        if g.t > t_last || g.t < ts[0] {
            continue;
        }
        let (e_th, ux_th, xx_th) = centerline_prediction(c, g.t);
        let (es, us, xs) = (pe.eval(g.t) - c.qstar, pu.eval(g.t), px.eval(g.t));
        let ew = g.centerline_eta() - c.qstar;
        let (uw, xw) = centerline_derivatives(g, floor);
        t.push(vec![
            g.t,
            es,
            ew,
            e_th,
            us,
            uw,
            ux_th,
            xs,
            xw,
            xx_th,
            rel(es, e_th),
            rel(ew, e_th),
            rel(us, ux_th),
            rel(uw, ux_th),
            rel(xs, xx_th),
            rel(xw, xx_th),
        ]);
    }
    Ok(t)
}
