//! Subcommand implementations. Each `run` writes a directory; the library
//! functions next to them return in-memory results for tests and the
//! acceptance binary.

pub mod coefficients;
pub mod compare;
pub mod convergence;
pub mod run;
pub mod scaling;

use std::path::{Path, PathBuf};
use std::time::Instant;

use airy_core::asymptotics::{
    full_coefficients, inner_profile_full, inner_profile_stoker, riemann_coefficients, stoker_coefficients,
    AsymptoticCoefficients, CaseTag, Coords,
};
use airy_core::exact::shoulder_outer_edge;
use airy_core::weno::Splitting;
use airy_core::{Scenario, ScenarioParams};
use anyhow::Result;
use serde::Serialize;
use serde_json::Value;

use crate::cli::{Format, Physical, SplittingArg};
use crate::output::{ensure_dir, write_table, Manifest, Table};
use crate::usage;

/// Validated parameters for a family.
pub fn params(kind: Scenario, ph: &Physical) -> Result<ScenarioParams> {
    let g0 = ph.g0.unwrap_or(ph.gamma0);
    if kind.is_post_collapse() && ph.mu0 != 0.0 {
        return Err(usage(format!("--mu0 must be 0 for {}", kind.name())));
    }
    if kind == Scenario::WetParabola && !(ph.mu0 > 0.0) {
        return Err(usage("wet-parabola needs --mu0 > 0"));
    }
    if kind == Scenario::DryParabola && ph.mu0 != 0.0 {
        return Err(usage("dry-parabola needs --mu0 0"));
    }
    ScenarioParams::new(ph.q, ph.gamma0, ph.mu0, g0).map_err(|e| usage(format!("invalid parameters: {e}")))
}

/// Asymptotic coefficients of a post-collapse family.
pub fn theory(kind: Scenario, p: &ScenarioParams) -> Result<Option<AsymptoticCoefficients>> {
    Ok(match kind {
        Scenario::DoubleRiemann => Some(riemann_coefficients(p.q)?),
        Scenario::DoubleStoker => Some(stoker_coefficients(p.q, p.g0)?),
        Scenario::Full => Some(full_coefficients(p.q, p.gamma0)?),
        _ => None,
    })
}

/// Leading inner profile `(η, u)` at `(x, t)`; NaN outside the strip.
pub fn inner_profile(c: &AsymptoticCoefficients, at: Coords) -> (f64, f64) {
    let r = match c.case {
        CaseTag::DoubleRiemann => match at {
            Coords::Physical { .. } => Ok((c.qstar, 0.0)),
            Coords::Unfolded { .. } => Ok((0.0, 0.0)),
        },
        CaseTag::DoubleStoker => inner_profile_stoker(at, c),
        CaseTag::Full => inner_profile_full(at, c),
    };
    r.unwrap_or((f64::NAN, f64::NAN))
}

/// Symmetric WENO domain used when `--x-max` is absent.
pub fn default_half_width(kind: Scenario, p: &ScenarioParams, t_end: f64) -> f64 {
    match kind {
        Scenario::DryParabola | Scenario::WetParabola => {
            (1.6 * p.a0()).max(1.1 * shoulder_outer_edge(t_end.min(p.validity_limit()), p))
        }
        Scenario::DoubleRiemann => 1.0,
        Scenario::DoubleStoker | Scenario::Full => p.hinge(),
    }
}

pub fn splitting(s: SplittingArg) -> Splitting {
    match s {
        SplittingArg::Characteristic => Splitting::Characteristic,
        SplittingArg::Componentwise => Splitting::Componentwise,
    }
}

/// Named tables plus diagnostics, ready to be written as a run directory.
#[derive(Debug, Clone, Default)]
pub struct Artifacts {
    pub tables: Vec<(String, Table)>,
    pub diagnostics: Value,
}

impl Artifacts {
    pub fn table(&self, stem: &str) -> Option<&Table> {
        self.tables.iter().find(|(s, _)| s == stem).map(|(_, t)| t)
    }
}

pub fn out_dir(out: &Option<PathBuf>, default: &str) -> PathBuf {
    out.clone().unwrap_or_else(|| Path::new("runs").join(default))
}

/// Writes `artifacts` and `manifest.json` into `dir`.
pub fn write_run(
    dir: &Path,
    command: &str,
    config: impl Serialize,
    artifacts: &Artifacts,
    format: Format,
    started: Instant,
) -> Result<()> {
    ensure_dir(dir)?;
    let mut manifest = Manifest::new(command, config);
    for (stem, table) in &artifacts.tables {
        let path = write_table(dir, stem, table, format)?;
        manifest.add_file(&path);
    }
    manifest.diagnostics = artifacts.diagnostics.clone();
    manifest.finish(started.elapsed());
    manifest.write(dir)
}

/// Observed orders `log2(e_k/e_{k+1}) / log2(n_{k+1}/n_k)`.
pub fn observed_orders(levels: &[f64], errors: &[f64]) -> Vec<f64> {
    let mut out = vec![f64::NAN];
    for k in 1..errors.len() {
        out.push((errors[k - 1] / errors[k]).ln() / (levels[k] / levels[k - 1]).ln());
    }
    out
}
