mod common;

use common::{leibniz_holds, snf_valid};
use num_bigint::BigInt;
use proptest::prelude::*;
use rcyclo_core::coeff::{MackeyFunctor, MackeyMap};
use rcyclo_core::gralg::matrix::Dense;
use rcyclo_core::pipelines::sequences::f2_rules;
use rcyclo_core::pipelines::D3Route;
use rcyclo_core::specseq::e2::{e2_f2, Flavor};
use rcyclo_core::specseq::collapse::run_pages;
use rcyclo_core::specseq::{DifferentialRule, Window};
use rcyclo_core::{AbGroup, Monomial, Presentation};
use std::sync::OnceLock;

fn hfpss() -> &'static (Presentation, DifferentialRule) {
    static P: OnceLock<(Presentation, DifferentialRule)> = OnceLock::new();
    P.get_or_init(|| {
        let pres = e2_f2(Flavor::Fixed);
        let rule = f2_rules(&pres, D3Route::Asserted).unwrap().remove(1);
        (pres, rule)
    })
}

fn tss() -> &'static (Presentation, DifferentialRule) {
    static P: OnceLock<(Presentation, DifferentialRule)> = OnceLock::new();
    P.get_or_init(|| {
        let pres = e2_f2(Flavor::Tate);
        let rule = f2_rules(&pres, D3Route::Asserted).unwrap().remove(1);
        (pres, rule)
    })
}

/// Exponents (tau, rho, theta, u, x); cone monomials carry nonpositive tau and rho.
fn monomial(laurent_u: bool) -> impl Strategy<Value = Monomial> {
    let u = if laurent_u { -6i64..=6 } else { 0i64..=6 };
    prop_oneof![
        (0i64..=6, 0i64..=6, u.clone(), 0i64..=6).prop_map(|(t, r, u, x)| Monomial::new(vec![t, r, 0, u, x])),
        (-6i64..=0, -6i64..=0, u, 0i64..=6).prop_map(|(t, r, u, x)| Monomial::new(vec![t, r, 1, u, x])),
    ]
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Dense)> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-30i64..=30, c), r)
            .prop_map(move |rows| (r, c, rows.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn leibniz_on_fixed_points(a in monomial(false), b in monomial(false)) {
        let (pres, rule) = hfpss();
        prop_assume!(pres.admissible(&a) && pres.admissible(&b));
        prop_assert!(leibniz_holds(pres, rule, &a, &b));
    }

    #[test]
    fn leibniz_on_tate(a in monomial(true), b in monomial(true)) {
        let (pres, rule) = tss();
        let (Some(a), Some(b)) = (pres.normalize(&a), pres.normalize(&b)) else { return Ok(()) };
        prop_assert!(leibniz_holds(pres, rule, &a, &b));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_form_is_valid((r, c, a) in small_matrix()) {
        prop_assert!(snf_valid(&a, r, c));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(a in monomial(false), b in monomial(false), c in monomial(false)) {
        let (pres, _) = hfpss();
        prop_assume!(pres.admissible(&a) && pres.admissible(&b) && pres.admissible(&c));
        prop_assert_eq!(pres.multiply(&a, &b), pres.multiply(&b, &a));
        let left = pres.multiply(&a, &b).and_then(|ab| pres.multiply(&ab, &c));
        let right = pres.multiply(&b, &c).and_then(|bc| pres.multiply(&a, &bc));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn constant_mackey_maps(order in 2u64..50, k in -20i64..20) {
        // multiplication by k on the constant functor of Z/order
        let g = AbGroup::cyclic_sum(&[Some(BigInt::from(order))]);
        let f = MackeyFunctor::constant(&g);
        f.check_axioms().unwrap();
        let m: Dense = vec![vec![BigInt::from(k)]];
        let map = MackeyMap::new(f.clone(), f, m.clone(), m).unwrap();
        let (ker, coker) = map.kernel_cokernel().unwrap();
        ker.check_axioms().unwrap();
        coker.check_axioms().unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn d_squared_vanishes_on_every_page(s0 in -6i64..0, t1 in 4i64..10) {
        for flavor in [Flavor::Fixed, Flavor::Tate] {
            let pres = e2_f2(flavor);
            let rules = f2_rules(&pres, D3Route::Asserted).unwrap();
            let (_, history) = run_pages(&pres, &rules, Window::at_weight(0, (s0, 2), (0, t1))).unwrap();
            for page in &history {
                page.check_d_squared().unwrap();
            }
        }
    }
}
