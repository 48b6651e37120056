//! Seeded random instances shared by the integration tests.
#![allow(dead_code)]

use moore_algebra::calculus::Derivation;
use moore_algebra::hochschild::component_parity;
use moore_algebra::ring::{make_ring, rational, BaseKind, Generator, Monomial, Ring, RingElement, RingSpec};
use moore_algebra::{CommSeries, GaugePair, GradingContext, Letter, MooreStructure, NcSeries, Parity, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Series = CommSeries<RingElement>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ground_rings() -> Vec<Ring> {
    vec![Ring::rationals(), Ring::integers(), Ring::integers_mod(6).unwrap()]
}

/// `ℚ[x, y]` truncated in total degree 3.
pub fn poly_xy() -> Ring {
    make_ring(&RingSpec::polynomial(RingSpec::Rationals, vec![Generator::new("x", 0), Generator::new("y", 0)], 3))
        .unwrap()
}

/// `ℚ ⊕ εℚ`.
pub fn dual_numbers() -> Ring {
    make_ring(&RingSpec::square_zero(RingSpec::Rationals, vec![Generator::new("eps", 0)])).unwrap()
}

/// `ℚ[e₁, e₂]` with all products of the `eᵢ` zero.
pub fn square_zero_two() -> Ring {
    make_ring(&RingSpec::square_zero(RingSpec::Rationals, vec![Generator::new("e1", 0), Generator::new("e2", 0)]))
        .unwrap()
}

/// `ℚ[l₁, l₂]` truncated in total degree 2.
pub fn truncated_two() -> Ring {
    make_ring(&RingSpec::polynomial(RingSpec::Rationals, vec![Generator::new("l1", 0), Generator::new("l2", 0)], 2))
        .unwrap()
}

pub fn ground_value<R: Rng>(rng: &mut R, kind: &BaseKind) -> num_rational::BigRational {
    match kind {
        BaseKind::Rationals => rational(rng.gen_range(-4..=4), rng.gen_range(1..=3)),
        BaseKind::Integers => rational(rng.gen_range(-4..=4), 1),
        BaseKind::IntegersMod(n) => rational(rng.gen_range(0..*n as i64), 1),
    }
}

/// A random element; with `kernel` set only monomials in the kernel of the
/// augmentation are used.
pub fn element<R: Rng>(rng: &mut R, ring: &Ring, kernel: bool) -> RingElement {
    let kind = ring.base_kind().clone();
    let below = ring.augmentation_target().generators().len();
    let monos: Vec<Monomial> = ring
        .basis_monomials()
        .iter()
        .filter(|m| !kernel || !ring.is_augmented() || m.0[below..].iter().any(|&e| e > 0))
        .cloned()
        .collect();
    let mut terms = Vec::new();
    for m in monos {
        if rng.gen_bool(0.6) {
            terms.push((m, ground_value(rng, &kind)));
        }
    }
    ring.element(terms)
}

/// A unit: a nonzero rational, `±1`, or a unit mod 6, plus kernel noise
/// when the ring is augmented.
pub fn unit<R: Rng>(rng: &mut R, ring: &Ring) -> RingElement {
    let c = match ring.base_kind() {
        BaseKind::Rationals => {
            let n = [-3, -2, -1, 1, 2, 3][rng.gen_range(0..6)];
            rational(n, rng.gen_range(1..=3))
        }
        BaseKind::Integers => rational([-1, 1][rng.gen_range(0..2)], 1),
        BaseKind::IntegersMod(n) => {
            let units: Vec<i64> = (1..*n as i64).filter(|k| num_integer::gcd(*k, *n as i64) == 1).collect();
            rational(units[rng.gen_range(0..units.len())], 1)
        }
    };
    let base = ring.from_rational(&c).unwrap();
    if ring.is_augmented() {
        &base + &element(rng, ring, true)
    } else {
        base
    }
}

/// Random series with no constant term, restricted to powers of the given
/// parity.
pub fn series<R: Rng>(rng: &mut R, ring: &Ring, ctx: GradingContext, powers: Option<Parity>, kernel: bool) -> Series {
    let mut s = CommSeries::zero(ring, ctx);
    for k in 1..=ctx.order() {
        if powers.is_some_and(|p| Parity::of(k as i64) != p) || !rng.gen_bool(0.5) {
            continue;
        }
        s = s.add(&CommSeries::monomial(ring, ctx, k, element(rng, ring, kernel)));
    }
    s
}

pub fn odd_structure<R: Rng>(rng: &mut R, ring: &Ring, ctx: GradingContext, kernel: bool) -> MooreStructure<RingElement> {
    let v = series(rng, ring, ctx, Some(Parity::Even), kernel);
    let w = series(rng, ring, ctx, Some(Parity::Even), kernel);
    MooreStructure::odd(v, w).unwrap()
}

pub fn even_structure<R: Rng>(rng: &mut R, ring: &Ring, ctx: GradingContext, kernel: bool) -> MooreStructure<RingElement> {
    MooreStructure::even(series(rng, ring, ctx, None, kernel)).unwrap()
}

pub fn structure<R: Rng>(rng: &mut R, ring: &Ring, ctx: GradingContext, kernel: bool) -> MooreStructure<RingElement> {
    if ctx.t_is_odd() {
        odd_structure(rng, ring, ctx, kernel)
    } else {
        even_structure(rng, ring, ctx, kernel)
    }
}

/// A random gauge pair; `pointed` keeps `G` and the non-linear part of `F`
/// in the augmentation kernel and `ε(f₁) = 1`. `G` is zero when `t` is even.
pub fn pair<R: Rng>(rng: &mut R, ring: &Ring, ctx: GradingContext, pointed: bool) -> GaugePair<RingElement> {
    let odd = ctx.t_is_odd().then_some(Parity::Odd);
    let g = if odd.is_some() { series(rng, ring, ctx, odd, pointed) } else { CommSeries::zero(ring, ctx) };
    let rest = series(rng, ring, ctx, odd, pointed);
    let f1 = if pointed { &ring.one() + &element(rng, ring, true) } else { unit(rng, ring) };
    let f = CommSeries::monomial(ring, ctx, 1, f1).add(&rest.sub(&CommSeries::monomial(ring, ctx, 1, rest.coefficient(1))));
    GaugePair::new(g, f).unwrap()
}

/// A random normalised cochain, optionally of one parity.
pub fn cochain<R: Rng>(rng: &mut R, ring: &Ring, ctx: GradingContext, parity: Option<Parity>) -> Derivation<RingElement> {
    let mut parts = [CommSeries::zero(ring, ctx), CommSeries::zero(ring, ctx)];
    for (i, part) in [Letter::Tau, Letter::T].into_iter().enumerate() {
        for k in 1..=ctx.order() {
            if parity.is_some_and(|p| component_parity(&ctx, part, k) != p) || !rng.gen_bool(0.4) {
                continue;
            }
            parts[i] = parts[i].add(&CommSeries::monomial(ring, ctx, k, element(rng, ring, false)));
        }
    }
    Derivation::normalised(&parts[0], &parts[1]).unwrap()
}

/// A random noncommutative series without constant term, homogeneous of
/// the given parity when set.
pub fn nc_series<R: Rng>(rng: &mut R, ring: &Ring, ctx: GradingContext, max_len: usize, parity: Option<Parity>) -> NcSeries<RingElement> {
    let mut s = NcSeries::zero(ring, ctx);
    for _ in 0..rng.gen_range(1..=4) {
        let len = rng.gen_range(1..=max_len);
        let letters: Vec<Letter> = (0..len).map(|_| if rng.gen_bool(0.5) { Letter::Tau } else { Letter::T }).collect();
        let w = Word::from_letters(&letters);
        if parity.is_some_and(|p| w.parity(&ctx) != p) {
            continue;
        }
        s.add_term(w, element(rng, ring, false));
    }
    s
}
