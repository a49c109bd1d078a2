use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use airy_harness::output::read_table;

fn airy(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_airy")).args(args).current_dir(cwd).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn manifest(dir: &Path) -> serde_json::Value {
    serde_json::from_slice(&fs::read(dir.join("manifest.json")).unwrap()).unwrap()
}

#[test]
fn help_and_version_exit_zero() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&airy(&["--help"], tmp.path())), 0);
    assert_eq!(code(&airy(&["--version"], tmp.path())), 0);
    assert_eq!(code(&airy(&["run", "--help"], tmp.path())), 0);
}

#[test]
fn usage_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &[],
        &["run", "--scenario", "full"],
        &["run", "--scenario", "full", "--solver", "weno", "--Q", "abc"],
        &["run", "--scenario", "lake", "--solver", "weno"],
        &["run", "--scenario", "full", "--solver", "weno", "--M", "10.5"],
        &["run", "--scenario", "full", "--solver", "exact"],
        &["run", "--scenario", "dry-parabola", "--solver", "spectral"],
        &["run", "--scenario", "full", "--solver", "weno", "--Q", "-1"],
        &["run", "--scenario", "wet-parabola", "--solver", "weno"],
        &["run", "--scenario", "full", "--solver", "weno", "--mu0", "0.1"],
        &["run", "--scenario", "dry-parabola", "--solver", "exact", "--t-end", "100"],
        &["run", "--scenario", "full", "--solver", "weno", "--t-end", "-1"],
        &["convergence", "--scenario", "full", "--solver", "weno", "--levels", "64"],
        &["compare", "--scenario", "dry-parabola"],
    ];
    for args in cases {
        let o = airy(args, tmp.path());
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn solver_failure_exits_one() {
    let tmp = tempfile::tempdir().unwrap();
    // far above the collocation CFL bound
    let o = airy(&["run", "--scenario", "full", "--solver", "spectral", "--dt", "0.5", "--t-end", "0.01"], tmp.path());
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("CFL"));
}

#[test]
fn exact_run_writes_snapshots_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("dry");
    let o = airy(
        &[
            "run",
            "--scenario",
            "dry-parabola",
            "--solver",
            "exact",
            "--Q",
            "2",
            "--gamma0",
            "1",
            "--times",
            "0,0.01,0.46,0.57,0.71,0.78",
            "--M",
            "201",
            "--out",
            out.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for t in ["0", "0.01", "0.46", "0.57", "0.71", "0.78"] {
        let snap = read_table(&out.join(format!("snap_{t}.csv"))).unwrap();
        assert_eq!(snap.header(), "x,eta,u,m");
        assert_eq!(snap.rows.len(), 201);
        // the dry point stays dry
        assert_eq!(snap.rows[100][1], 0.0);
    }
    let series = read_table(&out.join("series.csv")).unwrap();
    assert_eq!(&series.columns[..2], ["t", "eta0"]);
    let m = manifest(&out);
    assert_eq!(m["command"], "run");
    assert_eq!(m["config"]["physical"]["q"], 2.0);
    assert!(m["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert_eq!(m["files"].as_array().unwrap().len(), 7);
}

#[test]
fn weno_runs_are_bit_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = tmp.path().join(name);
        let o = airy(
            &[
                "run",
                "--scenario",
                "double-riemann",
                "--solver",
                "weno",
                "--Q",
                "0.5",
                "--M",
                "256",
                "--dt",
                "1e-3",
                "--t-end",
                "0.2",
                "--times",
                "0.1",
                "--out",
                out.to_str().unwrap(),
            ],
            tmp.path(),
        );
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        out
    };
    let (a, b) = (run("a"), run("b"));
    for f in ["series.csv", "snap_0.1.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let series = read_table(&a.join("series.csv")).unwrap();
    assert_eq!(series.header(), "t,eta0,xs_est");
    assert_eq!(manifest(&a)["diagnostics"]["clamps"], 0);
}

#[test]
fn spectral_run_carries_theory_columns() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("s");
    let o = airy(
        &[
            "run",
            "--scenario",
            "double-stoker",
            "--solver",
            "spectral",
            "--modes",
            "24",
            "--t-end",
            "0.02",
            "--times",
            "0.01",
            "--out",
            out.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let s = read_table(&out.join("series.csv")).unwrap();
    for c in ["tau", "t", "xs", "eta0", "ux0", "etaxx0", "eta0_th", "ux0_th", "etaxx0_th"] {
        assert!(s.columns.iter().any(|x| x == c), "{c}");
    }
    let snap = read_table(&out.join("snap_0.01.csv")).unwrap();
    assert_eq!(&snap.columns[..4], ["xi", "x", "eta", "u"]);
    assert_eq!(snap.rows.len(), 2 * 24 - 1);
    let k = snap.columns.iter().position(|c| c == "eta_th").unwrap();
    let mid = &snap.rows[23];
    assert!((mid[2] - mid[k]).abs() < 1e-5, "{mid:?}");
}

#[test]
fn json_format_replaces_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("j");
    let o = airy(
        &[
            "run",
            "--scenario",
            "double-riemann",
            "--solver",
            "exact",
            "--times",
            "0.5",
            "--format",
            "json",
            "--out",
            out.to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value = serde_json::from_slice(&fs::read(out.join("snap_0.5.json")).unwrap()).unwrap();
    assert_eq!(doc["columns"][0], "x");
    assert!(!out.join("snap_0.5.csv").exists());
}

#[test]
fn coefficients_table_reports_deltas() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("c");
    let o = airy(&["coefficients", "--Q", "1", "--gamma0", "1", "--out", out.to_str().unwrap()], tmp.path());
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("case,name,value,normalized,reference,rel_delta,oracle"));
    let mut r = csv::Reader::from_path(out.join("coefficients.csv")).unwrap();
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 14);
    for row in &rows {
        let d: f64 = row[5].parse().unwrap();
        assert!(d < 1e-4, "{row:?}");
    }
    assert!(manifest(&out)["diagnostics"]["max_rel_delta"].as_f64().unwrap() < 1e-4);
}

#[test]
fn compare_scaling_and_convergence_write_reports() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = |n: &str| tmp.path().join(n);
    let o = airy(
        &["compare", "--M", "512", "--t-end", "0.02", "--times", "0.01,0.02", "--out", dir("cmp").to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = read_table(&dir("cmp").join("profiles.csv")).unwrap();
    assert_eq!(p.rows.len(), 2);
    assert!(p.rows.iter().all(|r| r[4] < 1e-2 && r[5] < 1e-2));
    assert!(dir("cmp").join("profile_0.01.csv").exists());
    let m = manifest(&dir("cmp"));
    assert!(m["diagnostics"]["alignment"].as_str().unwrap().contains("monotone cubic"));
    let c = read_table(&dir("cmp").join("centerline.csv")).unwrap();
    assert!(!c.rows.is_empty());

    let o = airy(
        &["scaling-study", "--grid", "2", "--tau-probe", "-10", "--jobs", "2", "--out", dir("sc").to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let fit = read_table(&dir("sc").join("fit.csv")).unwrap();
    assert!((fit.rows[0][0] - 2.0 / 3.0).abs() < 0.02 && (fit.rows[0][2] - 1.0 / 3.0).abs() < 0.02, "{fit:?}");
    assert_eq!(read_table(&dir("sc").join("scaling.csv")).unwrap().rows.len(), 4);

    let o = airy(
        &[
            "convergence",
            "--scenario",
            "wet-parabola",
            "--solver",
            "weno",
            "--Q",
            "1",
            "--gamma0",
            "1",
            "--mu0",
            "0.5",
            "--levels",
            "101,201",
            "--t-end",
            "0.1",
            "--x-max",
            "2",
            "--out",
            dir("cv").to_str().unwrap(),
        ],
        tmp.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let t = read_table(&dir("cv").join("convergence.csv")).unwrap();
    assert!(t.rows[1][4] > 4.5, "{:?}", t.rows);
}
