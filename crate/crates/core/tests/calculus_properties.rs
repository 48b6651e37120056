mod common;

use common::{cochain, nc_series, pair, rng, structure};
use moore_algebra::calculus::Derivation;
use moore_algebra::{GradingContext, Letter, Parity, Ring};
use proptest::prelude::*;

fn ctx(odd: bool, n: usize) -> GradingContext {
    if odd {
        GradingContext::odd(n).unwrap()
    } else {
        GradingContext::even(n).unwrap()
    }
}

fn par(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::Even
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn leibniz_rule(seed in any::<u64>(), odd in any::<bool>(), px in any::<bool>(), pa in any::<bool>()) {
        let ring = Ring::rationals();
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let xi = cochain(&mut r, &ring, c, Some(par(px)));
        let a = nc_series(&mut r, &ring, c, 3, Some(par(pa)));
        let b = nc_series(&mut r, &ring, c, 3, None);
        let lhs = xi.apply(&a.mul(&b));
        let rhs = xi.apply(&a).mul(&b).add(&a.mul(&xi.apply(&b)).scale_int(par(px).sign(par(pa))));
        prop_assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn bracket_antisymmetry_and_jacobi(seed in any::<u64>(), odd in any::<bool>(), pa in any::<bool>(), pb in any::<bool>(), pc in any::<bool>()) {
        let ring = Ring::rationals();
        let c = ctx(odd, 7);
        let mut r = rng(seed);
        let (qa, qb, qc) = (par(pa), par(pb), par(pc));
        let x = cochain(&mut r, &ring, c, Some(qa));
        let y = cochain(&mut r, &ring, c, Some(qb));
        let z = cochain(&mut r, &ring, c, Some(qc));
        let xy = x.bracket(&y).unwrap();
        prop_assert!(xy.agrees_with(&y.bracket(&x).unwrap().scale_int(-qa.sign(qb))));
        let t1 = x.bracket(&y.bracket(&z).unwrap()).unwrap().scale_int(qa.sign(qc));
        let t2 = y.bracket(&z.bracket(&x).unwrap()).unwrap().scale_int(qb.sign(qa));
        let t3 = z.bracket(&xy).unwrap().scale_int(qc.sign(qb));
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn conjugation_composes(seed in any::<u64>(), odd in any::<bool>()) {
        let ring = Ring::rationals();
        let c = ctx(odd, 6);
        let mut r = rng(seed);
        let phi = pair(&mut r, &ring, c, false).to_endomorphism();
        let psi = pair(&mut r, &ring, c, false).to_endomorphism();
        let xi = cochain(&mut r, &ring, c, None);
        let nested = phi.conjugate(&psi.conjugate(&xi).unwrap()).unwrap();
        let direct = phi.compose(&psi).unwrap().conjugate(&xi).unwrap();
        prop_assert!(nested.agrees_with(&direct));
    }

    #[test]
    fn conjugation_preserves_square_zero(seed in any::<u64>(), odd in any::<bool>()) {
        let ring = Ring::rationals();
        let c = ctx(odd, 6);
        let mut r = rng(seed);
        let m = structure(&mut r, &ring, c, false).derivation();
        let phi = pair(&mut r, &ring, c, false).to_endomorphism();
        prop_assert!(phi.conjugate(&m).unwrap().is_square_zero().unwrap());
    }

    #[test]
    fn moore_structures_square_to_zero(seed in any::<u64>(), odd in any::<bool>(), which in 0usize..3) {
        let ring = &common::ground_rings()[which];
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let m: Derivation<_> = structure(&mut r, ring, c, false).derivation();
        let report = m.square_zero_check().unwrap();
        prop_assert!(report.holds(), "witness {:?}", report.witness.map(|(l, w, _)| (l == Letter::Tau, w)));
    }
}
