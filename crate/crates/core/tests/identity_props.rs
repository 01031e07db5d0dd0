use amdist::builder::build_matrices;
use amdist::invariants::{invariants_direct, invariants_ghh, kappa_of};
use amdist::inverse::{inverse_closed_form, inverse_via_laplacian, is_two_sided_inverse};
use amdist::matrix::exact_det;
use amdist::ring::Ring;
use amdist::verifier::{oracle_suite, random_datum, schwartz_zippel_check, CheckOptions, Identity, Shape};
use proptest::prelude::*;

fn shape() -> Shape {
    Shape::new(4, 4).with_bound(50)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn block_formulas_match_direct_invariants(seed in any::<u64>()) {
        let g = random_datum(seed, &shape()).unwrap();
        let am = build_matrices(&g);
        prop_assert!(invariants_direct(&am, &g).same_values(&invariants_ghh(&g)));
    }

    #[test]
    fn kappa_does_not_depend_on_base_vertex(seed in any::<u64>()) {
        let g = random_datum(seed, &shape()).unwrap();
        let am = build_matrices(&g);
        let k0 = kappa_of(&am, g.vertices()[0]).unwrap();
        for &v in g.vertices() {
            prop_assert_eq!(kappa_of(&am, v).unwrap(), k0.clone());
        }
    }

    #[test]
    fn closed_form_inverse_is_two_sided(seed in any::<u64>()) {
        let g = random_datum(seed, &shape()).unwrap();
        let am = build_matrices(&g);
        if !exact_det(&am.d).unwrap().is_zero() {
            let inv = inverse_closed_form(&g).unwrap();
            prop_assert!(is_two_sided_inverse(&am.d, &inv).unwrap());
            prop_assert_eq!(inverse_via_laplacian(&g).unwrap(), inv);
        }
    }

    #[test]
    fn oracle_suite_holds_on_random_data(seed in any::<u64>()) {
        let g = random_datum(seed, &Shape::new(3, 3).with_bound(20)).unwrap();
        let r = oracle_suite(&g);
        prop_assert!(r.passed(), "{:?}", r.failures);
        prop_assert!(r.checks > 0);
    }
}

#[test]
fn seeded_reports_are_deterministic() {
    let opts = CheckOptions::default();
    for id in [Identity::GhhDetSum, Identity::InverseClosedForm, Identity::MinorDet] {
        let a = schwartz_zippel_check(id, &Shape::new(3, 3), 4, 11, &opts).unwrap();
        let b = schwartz_zippel_check(id, &Shape::new(3, 3), 4, 11, &opts).unwrap();
        assert!(a.passed());
        assert_eq!(serde_json::to_value(&a).unwrap(), serde_json::to_value(&b).unwrap());
    }
}

#[test]
fn mutated_checks_fail() {
    let opts = CheckOptions { mutate: true, ..CheckOptions::default() };
    for id in [Identity::GhhDetSum, Identity::TreeMaster] {
        let r = schwartz_zippel_check(id, &Shape::new(3, 3), 3, 5, &opts).unwrap();
        assert!(!r.passed(), "{id:?}");
    }
}
