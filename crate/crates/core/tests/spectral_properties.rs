use airy_core::asymptotics::stoker_coefficients;
use airy_core::shock::qstar;
use airy_core::spectral::{
    advance, barycentric_eval, barycentric_weights, close_boundary, f1_from_centerline, glc_grid, lagrange_diff_matrix,
    rhs, run_shockfit, Collocation, Forcing, Scheme, ShockfitConfig, UnfoldedState,
};
use airy_core::{Scenario, ScenarioParams};
use proptest::prelude::*;

fn poly(c: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut d = 0.0;
    for &a in c.iter().rev() {
        d = d * x + p;
        p = p * x + a;
    }
    (p, d)
}

fn stoker() -> ScenarioParams {
    ScenarioParams::new(0.5, 1.0 / 16.0, 0.0, 1.0 / 16.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn grid_is_mirrored_and_increasing(m in 2usize..200) {
        let xi = glc_grid(m).unwrap();
        prop_assert_eq!(xi[0], 0.0);
        prop_assert_eq!(xi[m - 1], 1.0);
        for i in 0..m {
            prop_assert_eq!(xi[i] + xi[m - 1 - i], 1.0);
            if i > 0 {
                prop_assert!(xi[i] > xi[i - 1]);
            }
        }
    }

    #[test]
    fn differentiation_is_exact_below_grid_degree(
        m in 3usize..33,
        coeffs in prop::collection::vec(-1.0f64..1.0, 32),
    ) {
        let c = &coeffs[..m];
        let xi = glc_grid(m).unwrap();
        let d = lagrange_diff_matrix(&xi).unwrap();
        let vals: Vec<f64> = xi.iter().map(|&x| poly(c, x).0).collect();
        let dv = d.apply(&vals);
        let scale: f64 = c.iter().enumerate().map(|(k, a)| a.abs() * k as f64).sum::<f64>() + 1.0;
        for (i, &x) in xi.iter().enumerate() {
            prop_assert!((dv[i] - poly(c, x).1).abs() < 1e-11 * scale * (m * m) as f64);
        }
        for i in 0..m {
            let row: f64 = (0..m).map(|j| d.get(i, j)).sum();
            prop_assert!(row.abs() < 1e-12 * (m * m) as f64);
        }
    }

    #[test]
    fn interpolation_is_exact_below_grid_degree(
        m in 3usize..33,
        coeffs in prop::collection::vec(-1.0f64..1.0, 32),
        x in 0.0f64..1.0,
    ) {
        let c = &coeffs[..m];
        let xi = glc_grid(m).unwrap();
        let w = barycentric_weights(&xi).unwrap();
        let vals: Vec<f64> = xi.iter().map(|&p| poly(c, p).0).collect();
        prop_assert!((barycentric_eval(&xi, &w, &vals, x) - poly(c, x).0).abs() < 1e-12 * m as f64);
    }

    #[test]
    fn newton_closure_converges_quadratically(q in 0.05f64..2.0, nf in 0.25f64..0.9, kick in -0.05f64..0.05) {
        prop_assume!(kick.abs() > 1e-6);
        let n = nf * q;
        let v = 2.0 * n.sqrt() - 2.0 * q.sqrt();
        let inner = qstar(n, q).unwrap();
        let r = 2.0 * inner.sqrt();
        let exact = -r;
        let (s, hist) = close_boundary(r, exact * (1.0 + kick), n, v).unwrap();
        prop_assert!((s - exact).abs() < 1e-11 * r);
        prop_assert!(hist.len() <= 8, "{:?}", hist);
        for w in hist.windows(2) {
            if w[0] < 1e-3 * r && w[1] > 1e-13 * r {
                prop_assert!(w[1] <= 50.0 * w[0] * w[0] / r, "{:?}", hist);
            }
        }
    }

    #[test]
    fn synthetic_f1_is_recovered(f1 in 0.01f64..2.0, q in 0.05f64..1.0, tau in -16.0f64..-2.0) {
        let qs = 0.87349 * q;
        let s0 = 0.40097 * q.sqrt();
        let eta = f1 * (qs.sqrt() / s0).powf(2.0 / 3.0) * (2.0 * tau / 3.0).exp();
        let got = f1_from_centerline(eta, tau, qs, s0).unwrap();
        prop_assert!(((got - f1) / f1).abs() < 1e-10);
    }
}

#[test]
fn extraction_rejects_non_positive_perturbation() {
    assert!(f1_from_centerline(0.0, -6.0, 0.4, 0.3).is_err());
    assert!(f1_from_centerline(-1e-3, -6.0, 0.4, 0.3).is_err());
}

#[test]
fn stoker_run_stays_physical() {
    let p = stoker();
    let traj = run_shockfit(&ShockfitConfig::new(Scenario::DoubleStoker, p, -8.0)).unwrap();
    assert!(traj.min_eta > 0.0);
    assert!(traj.max_bc_residual < 1e-12);
    for w in traj.records.windows(2) {
        assert!(w[1].t > w[0].t && w[1].tau > w[0].tau);
    }
}

#[test]
fn stoker_shock_follows_the_quadratic_law() {
    let p = stoker();
    let c = stoker_coefficients(p.q, p.g0).unwrap();
    let traj = run_shockfit(&ShockfitConfig::new(Scenario::DoubleStoker, p, -4.0)).unwrap();
    for rec in traj.trusted().filter(|r| r.tau <= -5.0) {
        let pred = c.shock_position(rec.t);
        assert!(((rec.xs - pred) / pred).abs() < 0.05, "τ = {}", rec.tau);
        // and the correction itself is captured
        let corr = rec.xs - c.s0 * rec.t;
        let corr_pred = c.s1 * rec.t * rec.t;
        assert!(((corr - corr_pred) / corr_pred).abs() < 0.05, "τ = {}: {corr:e} vs {corr_pred:e}", rec.tau);
    }
}

#[test]
fn riemann_invariants_are_carried_by_characteristics() {
    let p = stoker();
    let f = Forcing::new(Scenario::DoubleStoker, p).unwrap();
    let col = Collocation::new(64).unwrap();
    let w = barycentric_weights(&col.xi).unwrap();
    let mut state = UnfoldedState::initial(64, (1e-8f64).ln(), &f);
    state = airy_core::spectral::apply_bcs(state, &f).unwrap().0;
    let h = 1e-4;
    // burn in, then follow one characteristic of each family from ξ = 0.3
    while state.tau < -12.0 {
        state = advance(&state, &col, &f, h, Scheme::Rk4).unwrap().0;
    }
    let speed = |st: &UnfoldedState, xi: f64, sign: f64| {
        let c = rhs(st, &col, &f).unwrap().t * (-st.tau).exp();
        let r = barycentric_eval(&col.xi, &w, &st.r, xi);
        let s = barycentric_eval(&col.xi, &w, &st.s, xi);
        let u = 0.5 * (r + s);
        let sq = 0.25 * (r - s);
        -xi + c * (u + sign * sq)
    };
    let value =
        |st: &UnfoldedState, xi: f64, plus: bool| barycentric_eval(&col.xi, &w, if plus { &st.r } else { &st.s }, xi);
    // R+ travels right from near the centre, R− left from near the shock
    let (mut xp, mut xm) = (0.1, 0.9);
    let (rp0, rm0) = (value(&state, xp, true), value(&state, xm, false));
    let start = state.tau;
    while xp < 0.9 && xm > 0.1 {
        let next = advance(&state, &col, &f, h, Scheme::Rk4).unwrap().0;
        let kp = speed(&state, xp, 1.0);
        let km = speed(&state, xm, -1.0);
        xp += 0.5 * h * (kp + speed(&next, xp + h * kp, 1.0));
        xm += 0.5 * h * (km + speed(&next, xm + h * km, -1.0));
        state = next;
    }
    assert!(state.tau - start > 0.1);
    let drift_p = (value(&state, xp, true) - rp0).abs();
    let drift_m = (value(&state, xm, false) - rm0).abs();
    // the invariants themselves vary by ~e^τ across the strip
    let spread = (state.r[63] - state.r[0]).abs().max((state.s[63] - state.s[0]).abs());
    assert!(drift_p < 1e-6 * spread && drift_m < 1e-6 * spread, "{drift_p:e} {drift_m:e} {spread:e}");
}

#[test]
fn refinement_leaves_shared_nodes_unchanged() {
    let p = stoker();
    let run = |m: usize| {
        let mut cfg = ShockfitConfig::new(Scenario::DoubleStoker, p, -10.0);
        cfg.m = m;
        cfg.h = 2e-4;
        run_shockfit(&cfg).unwrap().last
    };
    let coarse = run(17);
    let fine = run(33);
    let scale = (coarse.r[16] - coarse.r[0]).abs();
    for i in 0..17 {
        let dr = (coarse.r[i] - fine.r[2 * i]).abs();
        let ds = (coarse.s[i] - fine.s[2 * i]).abs();
        assert!(dr.max(ds) < 1e-10, "node {i}: {dr:e} {ds:e}");
        // still small against the perturbation itself
        assert!(dr.max(ds) < 1e-7 * scale, "node {i}: {dr:e} {ds:e} scale {scale:e}");
    }
}
