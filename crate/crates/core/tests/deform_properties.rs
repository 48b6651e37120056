mod common;

use common::{cochain, element, pair, rng, structure};
use moore_algebra::calculus::Derivation;
use moore_algebra::deform::{
    classify_miniversal, integrate_infinitesimal, pointed_conjugate, push_out, trivialize, DeformationJet,
    DeformationOverBase, RingHom,
};
use moore_algebra::hochschild::differential;
use moore_algebra::ring::{Ring, RingElement};
use moore_algebra::{CommSeries, GaugePair, GradingContext, MooreStructure, Parity};
use proptest::prelude::*;
use rand::Rng;

fn ctx(odd: bool, n: usize) -> GradingContext {
    if odd {
        GradingContext::odd(n).unwrap()
    } else {
        GradingContext::even(n).unwrap()
    }
}

/// An augmentation-compatible map sending every generator into the kernel.
fn kernel_map<R: Rng>(r: &mut R, source: &Ring, target: &Ring) -> RingHom {
    let images = (0..source.generators().len()).map(|_| element(r, target, true)).collect();
    RingHom::new(source, target, images).unwrap()
}

fn map_pair(f: &RingHom, p: &GaugePair<RingElement>) -> GaugePair<RingElement> {
    let target = f.target();
    GaugePair::new(p.g().map_into(target, |c| f.apply(c)), p.f().map_into(target, |c| f.apply(c))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn push_out_is_functorial(seed in any::<u64>(), odd in any::<bool>()) {
        let c = ctx(odd, 6);
        let mut r = rng(seed);
        let (a, b, e) = (common::poly_xy(), common::poly_xy(), common::dual_numbers());
        let d = DeformationOverBase::new(structure(&mut r, &a, c, true)).unwrap();
        let f = kernel_map(&mut r, &a, &b);
        let g = kernel_map(&mut r, &b, &e);
        let stepwise = push_out(&g, &push_out(&f, &d).unwrap()).unwrap();
        let direct = push_out(&f.then(&g).unwrap(), &d).unwrap();
        prop_assert!(stepwise.agrees_with(&direct));
    }

    #[test]
    fn push_out_respects_equivalence(seed in any::<u64>(), odd in any::<bool>()) {
        let c = ctx(odd, 6);
        let mut r = rng(seed);
        let (a, b) = (common::poly_xy(), common::truncated_two());
        let d = DeformationOverBase::new(structure(&mut r, &a, c, true)).unwrap();
        let p = pair(&mut r, &a, c, true);
        let f = kernel_map(&mut r, &a, &b);
        let left = push_out(&f, &pointed_conjugate(&p, &d).unwrap()).unwrap();
        let right = pointed_conjugate(&map_pair(&f, &p), &push_out(&f, &d).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
    }

    #[test]
    fn classification_round_trip(seed in any::<u64>(), odd in any::<bool>(), truncated in any::<bool>()) {
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let base = if truncated { common::truncated_two() } else { common::square_zero_two() };
        let d = DeformationOverBase::new(structure(&mut r, &base, c, true)).unwrap();
        let cls = classify_miniversal(&d).unwrap();
        let pushed = push_out(&cls.map, &cls.universal.deformation).unwrap();
        prop_assert!(pushed.agrees_with(&pointed_conjugate(&cls.gauge, &d).unwrap()));
        prop_assert_eq!(cls.unique, !truncated);
    }

    #[test]
    fn valid_jets_have_cocycle_obstructions(seed in any::<u64>(), odd in any::<bool>(), order in 1usize..4) {
        let ring = Ring::rationals();
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let m = structure(&mut r, &ring, c, false);
        let coeffs: Vec<Derivation<RingElement>> = (0..order).map(|_| cochain(&mut r, &ring, c, Some(Parity::Odd))).collect();
        let jet = DeformationJet::new(&m, &coeffs, 0).unwrap();
        prop_assert!(jet.is_valid());
        let obs = jet.obstruction().unwrap();
        prop_assert!(differential(&obs, &m).unwrap().is_zero());
        let next = jet.extension().unwrap();
        prop_assert!(next.is_some());
        let next = next.unwrap();
        prop_assert!(differential(&next, &m).unwrap().agrees_with(&obs.neg()));
        prop_assert!(jet.extend(&next).unwrap().is_valid());
    }

    #[test]
    fn extensions_are_exactly_coboundary_solutions(seed in any::<u64>(), odd in any::<bool>()) {
        let ring = Ring::rationals();
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let m = structure(&mut r, &ring, c, false);
        let jet = DeformationJet::new(&m, &[cochain(&mut r, &ring, c, Some(Parity::Odd))], 0).unwrap();
        let obs = jet.obstruction().unwrap();
        let candidate = if r.gen_bool(0.5) {
            let shift = differential(&cochain(&mut r, &ring, c, Some(Parity::Even)), &m).unwrap();
            jet.extension().unwrap().unwrap().add(&shift)
        } else {
            cochain(&mut r, &ring, c, Some(Parity::Odd))
        };
        let extends = jet.extend(&candidate).is_ok_and(|j| j.is_valid());
        let solves = differential(&candidate, &m).is_ok_and(|d| d.agrees_with(&obs.neg()));
        prop_assert_eq!(extends, solves);
    }

    #[test]
    fn rigid_structure_trivializes(seed in any::<u64>(), order in 1usize..4) {
        let ring = Ring::rationals();
        let c = ctx(true, 10);
        let mut r = rng(seed);
        let m = MooreStructure::odd(CommSeries::zero(&ring, c), CommSeries::monomial(&ring, c, 2, ring.one())).unwrap();
        let coeffs: Vec<Derivation<RingElement>> = (0..order).map(|_| cochain(&mut r, &ring, c, Some(Parity::Odd))).collect();
        let jet = DeformationJet::new(&m, &coeffs, 0).unwrap();
        prop_assert!(trivialize(&jet, order).unwrap().is_trivial());
    }

    #[test]
    fn integrated_automorphisms_commute(seed in any::<u64>(), odd in any::<bool>(), k in 1usize..3) {
        let ring = Ring::rationals();
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let m = structure(&mut r, &ring, c, false);
        let phi = differential(&cochain(&mut r, &ring, c, Some(Parity::Odd)), &m).unwrap();
        let auto = integrate_infinitesimal(&phi, k, 3, &m, 0).unwrap();
        prop_assert!(auto.commutes_with(&m));
        prop_assert!(auto.is_multiplicative(3));
    }
}

/// Every pointed pair `(0, t + e·t^k)` and `(0, (1 + e)·t)` fixes every
/// deformation of the trivial algebra over a square-zero base.
#[test]
fn infinitesimal_bases_absorb_pointed_pairs() {
    let base = common::square_zero_two();
    for odd in [false, true] {
        let c = ctx(odd, 6);
        let mut r = rng(7);
        let t = CommSeries::t(&base, c);
        for seed in 0..8 {
            let mut r2 = rng(seed);
            let d = DeformationOverBase::new(structure(&mut r2, &base, c, true)).unwrap();
            for name in ["e1", "e2"] {
                let e = base.generator(name).unwrap();
                for k in 1..=c.order() {
                    if odd && k % 2 == 0 {
                        continue;
                    }
                    let f = t.add(&CommSeries::monomial(&base, c, k, e.clone()));
                    let p = GaugePair::new(CommSeries::zero(&base, c), f).unwrap();
                    assert!(pointed_conjugate(&p, &d).unwrap().agrees_with(&d), "{p} moved {d}");
                }
            }
            let p = pair(&mut r, &base, c, true);
            let p = GaugePair::new(CommSeries::zero(&base, c), p.f().clone()).unwrap();
            assert!(pointed_conjugate(&p, &d).unwrap().agrees_with(&d), "{p} moved {d}");
        }
    }
}
