use std::time::Instant;

use airy_core::asymptotics::{full_coefficients, stoker_coefficients, taylor_hierarchy_oracle};
use airy_core::exact::collapse_time;
use airy_core::shock::{initial_shock_speed, qstar_of};
use anyhow::Result;
use serde::Serialize;
use serde_json::json;

use crate::cli::{CoefficientArgs, Format};
use crate::output::{ensure_dir, Manifest};
use crate::usage;

/// One coefficient with its normalisation and reference decimal.
#[derive(Debug, Clone, Serialize)]
pub struct CoefficientRow {
    pub case: &'static str,
    pub name: &'static str,
    pub value: f64,
    /// Value divided by its parameter scaling.
    pub normalized: f64,
    pub reference: f64,
    pub rel_delta: f64,
    /// Independent value from the Taylor recursion, when one exists.
    pub oracle: Option<f64>,
    pub oracle_rel_delta: Option<f64>,
}

fn row(
    case: &'static str,
    name: &'static str,
    value: f64,
    scale: f64,
    reference: f64,
    oracle: Option<f64>,
) -> CoefficientRow {
    let normalized = value / scale;
    CoefficientRow {
        case,
        name,
        value,
        normalized,
        reference,
        rel_delta: (normalized - reference).abs() / reference.abs(),
        oracle,
        oracle_rel_delta: oracle.map(|o| (o - value).abs() / value.abs()),
    }
}

/// All rows for `(Q, γ0)`; the double-Stoker rows use `g0` (default `γ0`).
pub fn table(q: f64, gamma0: f64, g0: f64) -> Result<Vec<CoefficientRow>> {
    if !(q > 0.0 && gamma0 > 0.0 && g0 > 0.0) {
        return Err(usage("--Q, --gamma0 and --g0 must be positive"));
    }
    let (rq, rg) = (q.sqrt(), g0.sqrt());
    let c3 = gamma0.cbrt();
    let qs = qstar_of(q)?;
    let s0 = initial_shock_speed(q)?;
    let st = stoker_coefficients(q, g0)?;
    let o = taylor_hierarchy_oracle(q, g0)?;
    let fu = full_coefficients(q, gamma0)?;
    let none = f64::NAN;
    Ok(vec![
        row("collapse", "t_c", collapse_time(gamma0)?, 1.0 / gamma0.sqrt(), std::f64::consts::FRAC_PI_4, None),
        row("riemann", "qstar", qs, q, 0.87349, Some(o.mu0)),
        row("riemann", "s0", s0, rq, 0.4009689, Some(o.s0)),
        row("double-stoker", "F1", st.f1, (g0 * q).sqrt(), -0.22215, None),
        row("double-stoker", "nu0", st.nu0.unwrap_or(none), rg, -0.23769, Some(o.nu0)),
        row("double-stoker", "mu1", st.mu1.unwrap_or(none), rg * q, 0.20762, Some(o.mu1)),
        row("double-stoker", "Phi1", st.phi1.unwrap_or(none), (g0 / q).sqrt(), -3.6325, None),
        row("double-stoker", "F2", st.f2.unwrap_or(none), g0, -0.58487, None),
        row("double-stoker", "s1", st.s1, (g0 * q).sqrt(), 0.11703, None),
        row("full", "F1", fu.f1, c3 * q.powf(2.0 / 3.0), 0.16752, None),
        row("full", "s1", fu.s1, c3 * rq, 0.18006, None),
        row("full", "c_ux", fu.c_ux.unwrap_or(none), c3, 0.122216, None),
        row("full", "c_etaxx", fu.c_etaxx.unwrap_or(none), c3, 0.040739, None),
        row("full", "A", fu.a, c3 * q.powf(1.0 / 6.0), -0.51691, None),
    ])
}

pub fn render(rows: &[CoefficientRow], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(rows)?),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
    }
}

pub fn run(args: &CoefficientArgs) -> Result<()> {
    let started = Instant::now();
    let ph = &args.physical;
    if ph.mu0 != 0.0 {
        return Err(usage("coefficients are defined for the dry collapse; --mu0 must be 0"));
    }
    let rows = table(ph.q, ph.gamma0, ph.g0.unwrap_or(ph.gamma0))?;
    let text = render(&rows, args.output.format)?;
    print!("{text}");
    if let Some(dir) = &args.output.out {
        ensure_dir(dir)?;
        let ext = match args.output.format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let path = dir.join(format!("coefficients.{ext}"));
        std::fs::write(&path, &text)?;
        let mut m = Manifest::new("coefficients", args);
        m.add_file(&path);
        let worst = rows.iter().map(|r| r.rel_delta).fold(0.0, f64::max);
        m.diagnostics = json!({ "max_rel_delta": worst });
        m.finish(started.elapsed());
        m.write(dir)?;
    }
    Ok(())
}
