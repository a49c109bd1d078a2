use std::time::Instant;

use airy_core::asymptotics::full_coefficients;
use airy_core::spectral::{extract_f1, run_shockfit, ShockfitConfig};
use airy_core::{Scenario, ScenarioParams};
use anyhow::Result;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use serde_json::json;

use super::{out_dir, write_run, Artifacts};
use crate::cli::ScalingArgs;
use crate::output::Table;
use crate::{parallel, usage};

/// Least-squares fit `log F1 = c + a log Q + b log γ0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SlopeFit {
    pub slope_q: f64,
    pub slope_q_se: f64,
    pub slope_gamma0: f64,
    pub slope_gamma0_se: f64,
    /// `e^c`: the prefactor once the fitted powers are divided out.
    pub prefactor: f64,
    /// Geometric mean of `F1 / (Q^{2/3} γ0^{1/3})`.
    pub collapsed: f64,
    pub points: usize,
}

#[derive(Debug, Clone)]
pub struct ScalingStudy {
    pub table: Table,
    pub fit: Option<SlopeFit>,
    /// Same fit over the two-probe extrapolated values.
    pub fit_extrapolated: Option<SlopeFit>,
    /// `(Q, γ0, message)` for runs that failed.
    pub failed: Vec<(f64, f64, String)>,
}

/// `n` geometrically spaced values from `lo` to `hi`.
pub fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64)).collect()
}

pub fn fit(points: &[(f64, f64, f64)]) -> Option<SlopeFit> {
    let n = points.len();
    if n < 4 {
        return None;
    }
    let a = DMatrix::from_fn(n, 3, |i, j| match j {
        0 => 1.0,
        1 => points[i].0.ln(),
        _ => points[i].1.ln(),
    });
    let y = DVector::from_iterator(n, points.iter().map(|p| p.2.ln()));
    let ata = a.transpose() * &a;
    let inv = ata.try_inverse()?;
    let beta = &inv * a.transpose() * &y;
    let resid = &y - &a * &beta;
    let s2 = resid.norm_squared() / (n - 3).max(1) as f64;
    let se = |k: usize| (s2 * inv[(k, k)]).max(0.0).sqrt();
    let collapsed =
        (points.iter().map(|p| (p.2 / (p.0.powf(2.0 / 3.0) * p.1.cbrt())).ln()).sum::<f64>() / n as f64).exp();
    Some(SlopeFit {
        slope_q: beta[1],
        slope_q_se: se(1),
        slope_gamma0: beta[2],
        slope_gamma0_se: se(2),
        prefactor: beta[0].exp(),
        collapsed,
        points: n,
    })
}

/// Offset in `τ` of the second probe used by [`extrapolate`].
pub const SECOND_PROBE_OFFSET: f64 = 2.0;

/// Removes the leading `e^{2τ/3}` bias of two single-probe estimates taken at
/// `τ1 < τ2`.
pub fn extrapolate(f_lo: f64, tau_lo: f64, f_hi: f64, tau_hi: f64) -> f64 {
    let (a, b) = ((2.0 * tau_lo / 3.0).exp(), (2.0 * tau_hi / 3.0).exp());
    (f_lo * b - f_hi * a) / (b - a)
}

/// Extracted `F'(0)` for one `(Q, γ0)`: the single-probe estimate and its
/// two-probe extrapolation.
pub fn probe(q: f64, gamma0: f64, args: &ScalingArgs) -> Result<(f64, f64)> {
    let p = ScenarioParams::dry(q, gamma0)?;
    let mut cfg = ShockfitConfig::new(Scenario::Full, p, args.tau_probe + 0.05);
    cfg.m = args.modes;
    cfg.h = args.dt;
    if let Some(t0) = args.tau0 {
        cfg.tau0 = t0;
    }
    let traj = run_shockfit(&cfg)?;
    let f = extract_f1(&traj, args.tau_probe)?;
    let lo = args.tau_probe - SECOND_PROBE_OFFSET;
    let g = extract_f1(&traj, lo)?;
    Ok((f, extrapolate(g, lo, f, args.tau_probe)))
}

pub fn study(args: &ScalingArgs) -> Result<ScalingStudy> {
    if !(args.lo > 0.0 && args.hi >= args.lo) {
        return Err(usage("need 0 < --lo <= --hi"));
    }
    if args.tau0.is_some_and(|t0| !(t0 < args.tau_probe)) {
        return Err(usage("--tau0 must be below --tau-probe"));
    }
    let ax = axis(args.lo, args.hi, args.grid);
    let cases: Vec<(f64, f64)> = ax.iter().flat_map(|&q| ax.iter().map(move |&g| (q, g))).collect();
    let results = parallel::map(&cases, args.output.jobs, |&(q, g)| probe(q, g, args));
    let mut table = Table::new(&[
        "Q",
        "gamma0",
        "f1",
        "f1_theory",
        "collapsed",
        "rel_err",
        "f1_extrapolated",
        "rel_err_extrapolated",
    ]);
    let mut ok = Vec::new();
    let mut ok_x = Vec::new();
    let mut failed = Vec::new();
    for (&(q, g), r) in cases.iter().zip(results) {
        match r {
            Ok((f1, fx)) => {
                let th = full_coefficients(q, g)?.f1;
                let col = f1 / (q.powf(2.0 / 3.0) * g.cbrt());
                table.push(vec![q, g, f1, th, col, (f1 - th).abs() / th, fx, (fx - th).abs() / th]);
                ok.push((q, g, f1));
                ok_x.push((q, g, fx));
            }
            Err(e) => failed.push((q, g, format!("{e:#}"))),
        }
    }
    Ok(ScalingStudy { table, fit: fit(&ok), fit_extrapolated: fit(&ok_x), failed })
}

pub fn run(args: &ScalingArgs) -> Result<()> {
    let started = Instant::now();
    let s = study(args)?;
    let mut fits = Table::new(&["slope_q", "slope_q_se", "slope_gamma0", "slope_gamma0_se", "prefactor", "collapsed"]);
    if let Some(f) = s.fit {
        fits.push(vec![f.slope_q, f.slope_q_se, f.slope_gamma0, f.slope_gamma0_se, f.prefactor, f.collapsed]);
    }
    print!("{}", crate::output::render(&fits, args.output.format));
    let failed: Vec<_> = s.failed.iter().map(|(q, g, m)| json!({ "Q": q, "gamma0": g, "error": m })).collect();
    let artifacts = Artifacts {
        tables: vec![("scaling".into(), s.table), ("fit".into(), fits)],
        diagnostics: json!({
            "fit": s.fit,
            "fit_extrapolated": s.fit_extrapolated,
            "second_probe_tau": args.tau_probe - SECOND_PROBE_OFFSET,
            "failed": failed,
        }),
    };
    let dir = out_dir(&args.output.out, "scaling-study");
    write_run(&dir, "scaling-study", args, &artifacts, args.output.format, started)?;
    println!("{}", dir.display());
    if s.fit.is_none() {
        anyhow::bail!("too few successful runs to fit slopes ({} failed)", s.failed.len());
    }
    Ok(())
}
