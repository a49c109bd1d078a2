use airy_core::exact::{
    characteristic_position, collapse_time, parabola_edge, parabola_state, presingularity_snapshot, shoulder_eval,
    shoulder_outer_edge, sigma_from_time, time_of_sigma, Family,
};
use airy_core::ScenarioParams;
use proptest::prelude::*;

fn dry(q: f64, g: f64) -> ScenarioParams {
    ScenarioParams::dry(q, g).unwrap()
}

#[test]
fn unit_collapse_time() {
    assert!((collapse_time(1.0).unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
}

#[test]
fn core_is_monotone_in_time() {
    let p = dry(2.0, 1.0);
    let tc = p.collapse_time();
    let mut prev = parabola_state(1.0, &p).unwrap();
    for k in 1..200 {
        let t = tc * k as f64 / 200.0;
        let st = parabola_state(sigma_from_time(t, p.gamma0).unwrap(), &p).unwrap();
        assert!(st.sigma > prev.sigma && st.gamma > prev.gamma && st.nu < prev.nu, "t = {t}");
        prev = st;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minus_invariant_is_uniform_on_the_shoulder(
        q in 0.05f64..2.0,
        g in 0.05f64..2.0,
        tf in 0.0f64..0.999,
        w in 0.0f64..1.0,
    ) {
        let p = dry(q, g);
        let t = tf * p.collapse_time();
        let sigma = sigma_from_time(t, g).unwrap();
        let a = parabola_edge(sigma, &p).unwrap().0;
        let b = shoulder_outer_edge(t, &p);
        let x = a + w * (b - a);
        let sp = shoulder_eval(x, t, &p).unwrap();
        prop_assert!((sp.v - 2.0 * sp.n.sqrt() + 2.0 * q.sqrt()).abs() < 1e-10);
        prop_assert!(sp.n >= 0.25 * q * (1.0 - 1e-12) && sp.n <= q * (1.0 + 1e-12));
        prop_assert!(sp.v >= -q.sqrt() * (1.0 + 1e-12) && sp.v <= 1e-14);
    }

    #[test]
    fn plus_characteristics_are_straight(
        q in 0.05f64..2.0,
        g in 0.05f64..2.0,
        tf in 0.05f64..0.9,
        w in 0.05f64..0.95,
    ) {
        let p = dry(q, g);
        let t1 = tf * p.collapse_time();
        let a = parabola_edge(sigma_from_time(t1, g).unwrap(), &p).unwrap().0;
        let x1 = a + w * (shoulder_outer_edge(t1, &p) - a);
        let sp = shoulder_eval(x1, t1, &p).unwrap();
        let t2 = 0.5 * (t1 + p.collapse_time());
        let x2 = x1 + (sp.v + sp.n.sqrt()) * (t2 - t1);
        let later = shoulder_eval(x2, t2, &p).unwrap();
        prop_assert!((later.sigma0 - sp.sigma0).abs() < 1e-8 * sp.sigma0);
        prop_assert!((later.n - sp.n).abs() < 1e-10 * q);
    }

    #[test]
    fn edge_rides_the_minus_characteristic(
        q in 0.05f64..2.0,
        g in 0.05f64..2.0,
        sigma in 1.0f64..1e4,
    ) {
        let p = dry(q, g);
        let a = parabola_edge(sigma, &p).unwrap().0;
        let c = characteristic_position(sigma, p.a0(), Family::Minus, &p).unwrap();
        prop_assert!((a - c).abs() < 1e-12 * p.a0());
    }

    #[test]
    fn dry_point_persists(q in 0.05f64..2.0, g in 0.05f64..2.0, tf in 0.0f64..0.999) {
        let p = dry(q, g);
        let t = tf * p.collapse_time();
        let snap = presingularity_snapshot(&[0.0], t, &p).unwrap();
        prop_assert_eq!(snap.eta[0], 0.0);
        prop_assert_eq!(snap.u[0], 0.0);
    }

    #[test]
    fn snapshot_is_mirror_symmetric(q in 0.05f64..2.0, g in 0.05f64..2.0, tf in 0.0f64..0.99) {
        let p = dry(q, g);
        let t = tf * p.collapse_time();
        let l = 1.2 * shoulder_outer_edge(t, &p);
        let xs: Vec<f64> = (0..=40).map(|k| l * (k as f64 / 20.0 - 1.0)).collect();
        let snap = presingularity_snapshot(&xs, t, &p).unwrap();
        for k in 0..=40 {
            prop_assert!((snap.eta[k] - snap.eta[40 - k]).abs() < 1e-12 * q);
            prop_assert!((snap.u[k] + snap.u[40 - k]).abs() < 1e-12 * q.sqrt());
        }
    }

    #[test]
    fn time_map_round_trips(g in 0.05f64..4.0, sigma in 1.0f64..1e6) {
        let t = time_of_sigma(sigma, g).unwrap();
        let back = sigma_from_time(t, g).unwrap();
        // t_c − t ∼ σ^{−3/2}: rounding in t is amplified by t/(t_c − t)
        let cond = t / (collapse_time(g).unwrap() - t);
        prop_assert!((back - sigma).abs() < (1e-12 + 8.0 * f64::EPSILON * cond) * sigma);
    }
}
