mod common;

use common::{cochain, odd_structure, rng, structure};
use moore_algebra::calculus::Derivation;
use moore_algebra::hochschild::{
    differential, differential_oracle, hh_module, quotient_invariants, solve_coboundary, CoboundarySolution,
};
use moore_algebra::ring::rational;
use moore_algebra::{CommSeries, GradingContext, MooreStructure, Ring};
use proptest::prelude::*;
use rand::Rng;

fn ctx(odd: bool, n: usize) -> GradingContext {
    if odd {
        GradingContext::odd(n).unwrap()
    } else {
        GradingContext::even(n).unwrap()
    }
}

/// `m₀ + w∂_τ` with `w` of valuation `2k` and unit leading coefficient.
fn normal_structure<R: Rng>(r: &mut R, ring: &Ring, c: GradingContext, k: usize) -> MooreStructure<moore_algebra::ring::RingElement> {
    let lead = CommSeries::monomial(ring, c, 2 * k, common::unit(r, ring));
    let mut w = lead;
    for j in (k + 1)..=c.order() / 2 {
        if r.gen_bool(0.5) {
            w = w.add(&CommSeries::monomial(ring, c, 2 * j, common::element(r, ring, false)));
        }
    }
    MooreStructure::odd(CommSeries::zero(ring, c), w).unwrap()
}

/// Every normalised cochain of precision `p` with coefficients in `ℤ/3`.
fn all_cochains(ring: &Ring, c: GradingContext, p: usize) -> Vec<Derivation<moore_algebra::ring::RingElement>> {
    let slots = 2 * p;
    let mut out = Vec::new();
    for code in 0..3usize.pow(slots as u32) {
        let mut digits = code;
        let mut parts = [CommSeries::zero(ring, c), CommSeries::zero(ring, c)];
        for s in 0..slots {
            let v = digits % 3;
            digits /= 3;
            if v > 0 {
                let coeff = ring.from_rational(&rational(v as i64, 1)).unwrap();
                parts[s / p] = parts[s / p].add(&CommSeries::monomial(ring, c, s % p + 1, coeff));
            }
        }
        out.push(Derivation::normalised(&parts[0], &parts[1]).unwrap());
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn differential_squares_to_zero(seed in any::<u64>(), odd in any::<bool>(), which in 0usize..3) {
        let ring = &common::ground_rings()[which];
        let c = ctx(odd, 8);
        let mut r = rng(seed);
        let m = structure(&mut r, ring, c, false);
        let xi = cochain(&mut r, ring, c, None);
        let once = differential(&xi, &m).unwrap();
        prop_assert!(differential(&once, &m).unwrap().is_zero());
        let once = differential_oracle(&xi, &m).unwrap();
        prop_assert!(differential_oracle(&once, &m).unwrap().is_zero());
    }

    #[test]
    fn closed_differential_matches_oracle(seed in any::<u64>(), which in 0usize..3) {
        let ring = &common::ground_rings()[which];
        let c = ctx(true, 10);
        let mut r = rng(seed);
        let m = odd_structure(&mut r, ring, c, false);
        let xi = cochain(&mut r, ring, c, None);
        let closed = differential(&xi, &m).unwrap();
        let oracle = differential_oracle(&xi, &m).unwrap();
        prop_assert!(closed.agrees_with(&oracle), "{} vs {}", closed, oracle);
    }

    #[test]
    fn coboundary_solutions_are_sound(seed in any::<u64>(), k in 1usize..3) {
        let ring = Ring::rationals();
        let c = ctx(true, 10);
        let mut r = rng(seed);
        let m = normal_structure(&mut r, &ring, c, k);
        let eta = cochain(&mut r, &ring, c, None);
        let exact = differential(&eta, &m).unwrap();
        let target = exact.add(&if r.gen_bool(0.5) {
            Derivation::zero(&ring, c)
        } else {
            let a = CommSeries::monomial(&ring, c, 2, common::unit(&mut r, &ring));
            Derivation::normalised(&a, &CommSeries::zero(&ring, c)).unwrap()
        });
        match solve_coboundary(&target, &m).unwrap() {
            CoboundarySolution::Preimage(pre) => {
                prop_assert!(differential(&pre, &m).unwrap().agrees_with(&target));
            }
            CoboundarySolution::NotCoboundary { residue } => {
                let gap = target.sub(&residue);
                prop_assert!(solve_coboundary(&gap, &m).unwrap().is_coboundary());
            }
        }
    }

    #[test]
    fn module_matches_quotient(seed in any::<u64>(), k in 1usize..3, five in any::<bool>()) {
        let ring = if five { Ring::integers_mod(5).unwrap() } else { Ring::rationals() };
        let c = ctx(true, 14);
        let mut r = rng(seed);
        let m = normal_structure(&mut r, &ring, c, k);
        let h = hh_module(&m, 8).unwrap();
        let q = quotient_invariants(m.w().unwrap(), 8).unwrap();
        prop_assert_eq!(h.invariants(), q);
        prop_assert!(h.bracket_vanishes(&m).unwrap());
    }
}

#[test]
fn classes_survive_every_small_cochain() {
    let ring = Ring::integers_mod(3).unwrap();
    let c = ctx(true, 4);
    let one = ring.one();
    let m = MooreStructure::odd(CommSeries::zero(&ring, c), CommSeries::monomial(&ring, c, 4, one.clone())).unwrap();
    let target = Derivation::normalised(&CommSeries::monomial(&ring, c, 2, one), &CommSeries::zero(&ring, c)).unwrap();
    let CoboundarySolution::NotCoboundary { residue } = solve_coboundary(&target, &m).unwrap() else {
        panic!("t^2 dtau should survive against w = t^4");
    };
    for eta in all_cochains(&ring, c, 4) {
        let d = differential(&eta, &m).unwrap();
        assert!(!d.agrees_with(&target), "killed by {eta}");
        assert!(!d.agrees_with(&residue), "residue killed by {eta}");
    }
}
