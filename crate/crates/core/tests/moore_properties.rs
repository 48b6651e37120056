mod common;

use common::{odd_structure, pair, rng, series, structure};
use moore_algebra::{normal_form, verify_equivalence, CommSeries, GaugePair, GradingContext, MooreStructure, Parity, Ring};
use proptest::prelude::*;

fn ctx(odd: bool, n: usize) -> GradingContext {
    if odd {
        GradingContext::odd(n).unwrap()
    } else {
        GradingContext::even(n).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pairs_form_a_group(seed in any::<u64>(), odd in any::<bool>(), which in 0usize..3) {
        let ring = &common::ground_rings()[which];
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let (p, q, s) = (pair(&mut r, ring, c, false), pair(&mut r, ring, c, false), pair(&mut r, ring, c, false));
        let left = p.compose(&q).unwrap().compose(&s).unwrap();
        let right = p.compose(&q.compose(&s).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
        let id = GaugePair::identity(ring, c);
        prop_assert!(p.compose(&id).unwrap().agrees_with(&p));
        prop_assert!(id.compose(&p).unwrap().agrees_with(&p));
        let inv = p.inverse().unwrap();
        prop_assert!(p.compose(&inv).unwrap().is_identity());
        prop_assert!(inv.compose(&p).unwrap().is_identity());
    }

    #[test]
    fn action_is_compatible_with_composition(seed in any::<u64>(), odd in any::<bool>()) {
        let ring = Ring::rationals();
        let c = ctx(odd, 6);
        let mut r = rng(seed);
        let (p, q) = (pair(&mut r, &ring, c, false), pair(&mut r, &ring, c, false));
        let m = structure(&mut r, &ring, c, false);
        let stepwise = p.act(&q.act(&m).unwrap()).unwrap();
        let at_once = p.compose(&q).unwrap().act(&m).unwrap();
        prop_assert!(stepwise.agrees_with(&at_once));
    }

    #[test]
    fn closed_action_matches_conjugation(seed in any::<u64>(), which in 0usize..3) {
        let ring = &common::ground_rings()[which];
        let c = ctx(true, 8);
        let mut r = rng(seed);
        let p = pair(&mut r, ring, c, false);
        let m = odd_structure(&mut r, ring, c, false);
        let closed = p.act(&m).unwrap();
        let oracle = p.act_by_conjugation(&m).unwrap();
        prop_assert!(closed.agrees_with(&oracle), "{} vs {}", closed, oracle);
    }

    #[test]
    fn normal_form_is_idempotent(seed in any::<u64>()) {
        let ring = Ring::rationals();
        let c = ctx(true, 10);
        let mut r = rng(seed);
        let m = odd_structure(&mut r, &ring, c, false);
        let (p, u) = normal_form(&m).unwrap();
        let normal = p.act(&m).unwrap();
        prop_assert!(normal.is_normal_form());
        let (again, u2) = normal_form(&normal).unwrap();
        prop_assert!(again.is_identity());
        prop_assert!(u.agrees_with(&u2));
    }

    #[test]
    fn nonzero_tau_shift_never_relates_normal_forms(seed in any::<u64>()) {
        let ring = Ring::rationals();
        let c = ctx(true, 8);
        let mut r = rng(seed);
        let zero = CommSeries::zero(&ring, c);
        let m1 = MooreStructure::odd(zero.clone(), series(&mut r, &ring, c, Some(Parity::Even), false)).unwrap();
        let m2 = MooreStructure::odd(zero, series(&mut r, &ring, c, Some(Parity::Even), false)).unwrap();
        let p = pair(&mut r, &ring, c, false);
        prop_assume!(!p.g().is_zero());
        prop_assert!(!verify_equivalence(&p, &m1, &m2).unwrap());
    }
}
