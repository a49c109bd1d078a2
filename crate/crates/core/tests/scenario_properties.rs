use airy_core::scenarios::{double_stoker_fields, full_ic, initial_state, FullIcTable};
use airy_core::{Scenario, ScenarioParams};
use proptest::prelude::*;

#[test]
fn full_and_stoker_start_from_the_same_origin_state() {
    let p = ScenarioParams::dry(0.5, 1.0 / 16.0).unwrap();
    let (n, v) = full_ic(0.0, &p).unwrap();
    let (ns, vs) = double_stoker_fields(0.0, 0.0, p.q, p.g0);
    assert!((n - 0.125).abs() < 1e-15 && (ns - 0.125).abs() < 1e-15);
    assert_eq!(v, 0.0);
    assert_eq!(vs, 0.0);
}

#[test]
fn table_is_close_to_direct_evaluation() {
    let p = ScenarioParams::dry(0.5, 1.0 / 16.0).unwrap();
    let table = FullIcTable::new(&p, 400).unwrap();
    for k in 1..50 {
        let x = 0.08 * k as f64;
        let (a, _) = table.eval(x);
        let (b, _) = full_ic(x, &p).unwrap();
        assert!((a - b).abs() < 1e-6, "x = {x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn initial_data_are_mirror_symmetric(
        q in 0.05f64..1.0,
        g in 0.05f64..1.0,
        mu in 0.0f64..0.5,
        x in 0.0f64..6.0,
    ) {
        let wet = ScenarioParams::new(q, g, mu * q, g).unwrap();
        let dry = ScenarioParams::dry(q, g).unwrap();
        for kind in Scenario::ALL {
            // only the wet family uses μ0; the post-collapse families start from the dry collapse
            let p = if kind == Scenario::WetParabola { wet } else { dry };
            let (ep, up) = initial_state(kind, x, &p).unwrap();
            let (em, um) = initial_state(kind, -x, &p).unwrap();
            prop_assert!((ep - em).abs() <= 1e-14 * q, "{:?}", kind);
            prop_assert!((up + um).abs() <= 1e-14 * q.sqrt(), "{:?}", kind);
            prop_assert!(ep >= 0.0 && ep <= q * (1.0 + 1e-12), "{:?}", kind);
        }
    }
}
