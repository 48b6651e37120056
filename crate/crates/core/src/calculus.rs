//! Derivations and endomorphisms of the free series algebra.
//!
//! Both are continuous and therefore determined by the images of the two
//! generators; they are stored as those images and compared only there.
//! The generic operations here (Leibniz application, brackets, composition,
//! inversion, conjugation) are the oracle that every closed formula in
//! [`crate::moore`] and [`crate::hochschild`] is checked against.
//!
//! Composition follows function order: `φ.compose(ψ)` is `x ↦ φ(ψ(x))`.
//! With this convention the pair law `(G, F)∘(G', F') = (G + G'(F), F'(F))`
//! holds verbatim when `(G, F)` stands for `τ ↦ τ + G(t)`, `t ↦ F(t)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{CommSeries, GradingContext, Letter, NcSeries, Parity, Word};

/// A continuous derivation, possibly inhomogeneous in parity.
#[derive(Clone, Debug)]
pub struct Derivation<C: Scalar> {
    tau: NcSeries<C>,
    t: NcSeries<C>,
}

/// Outcome of a square-zero test: the first nonzero coefficient of `m∘m`
/// on a generator, if any.
#[derive(Clone, Debug)]
pub struct SquareZeroReport<C: Scalar> {
    pub witness: Option<(Letter, Word, C)>,
}

impl<C: Scalar> SquareZeroReport<C> {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl<C: Scalar> Derivation<C> {
    pub fn new(tau: NcSeries<C>, t: NcSeries<C>) -> Result<Self> {
        if tau.context() != t.context() || tau.ring() != t.ring() {
            return Err(Error::ContextMismatch);
        }
        Ok(Derivation { tau, t })
    }

    pub fn zero(ring: &C::Ring, ctx: GradingContext) -> Self {
        Derivation { tau: NcSeries::zero(ring, ctx), t: NcSeries::zero(ring, ctx) }
    }

    /// `A(t)∂_τ + B(t)∂_t` with vanishing constant terms.
    pub fn normalised(a: &CommSeries<C>, b: &CommSeries<C>) -> Result<Self> {
        if !a.constant_term().is_zero() || !b.constant_term().is_zero() {
            return Err(Error::ConstantTerm("normalised derivation".into()));
        }
        Self::new(NcSeries::from_comm(a), NcSeries::from_comm(b))
    }

    pub fn image(&self, l: Letter) -> &NcSeries<C> {
        match l {
            Letter::Tau => &self.tau,
            Letter::T => &self.t,
        }
    }

    pub fn tau_image(&self) -> &NcSeries<C> {
        &self.tau
    }

    pub fn t_image(&self) -> &NcSeries<C> {
        &self.t
    }

    pub fn context(&self) -> GradingContext {
        self.tau.context()
    }

    pub fn ring(&self) -> &C::Ring {
        self.tau.ring()
    }

    pub fn precision(&self) -> usize {
        self.tau.precision().min(self.t.precision())
    }

    pub fn with_precision(&self, p: usize) -> Self {
        Derivation { tau: self.tau.clone().with_precision(p), t: self.t.clone().with_precision(p) }
    }

    pub fn is_zero(&self) -> bool {
        self.tau.is_zero() && self.t.is_zero()
    }

    /// Images are series in `t` without constant term.
    pub fn is_normalised(&self) -> bool {
        [&self.tau, &self.t].iter().all(|s| s.is_pure_t() && s.coefficient(Word::EMPTY).is_zero())
    }

    /// The pair `(A, B)` of a normalised derivation `A∂_τ + B∂_t`.
    pub fn parts(&self) -> Result<(CommSeries<C>, CommSeries<C>)> {
        if !self.is_normalised() {
            return Err(Error::NotNormalised);
        }
        Ok((self.tau.to_comm().expect("pure t"), self.t.to_comm().expect("pure t")))
    }

    fn split(&self, p: Parity) -> Self {
        let ctx = self.context();
        let pick = |img: &NcSeries<C>, l: Letter| {
            let (even, odd) = img.parity_components();
            // A term of parity q in the image of a letter of parity r has
            // derivation parity q + r.
            if p + l.parity(&ctx) == Parity::Even {
                even
            } else {
                odd
            }
        };
        Derivation { tau: pick(&self.tau, Letter::Tau), t: pick(&self.t, Letter::T) }
    }

    /// `(even part, odd part)`.
    pub fn parity_components(&self) -> (Self, Self) {
        (self.split(Parity::Even), self.split(Parity::Odd))
    }

    /// Parity when homogeneous; the zero derivation counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let (even, odd) = self.parity_components();
        match (even.is_zero(), odd.is_zero()) {
            (_, true) => Some(Parity::Even),
            (true, false) => Some(Parity::Odd),
            (false, false) => None,
        }
    }

    /// Whether the odd (resp. even) component vanishes.
    pub fn has_parity(&self, p: Parity) -> bool {
        self.split(p + Parity::Odd).is_zero()
    }

    /// Degree of the map when homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let ctx = self.context();
        let mut degs = Vec::new();
        for l in [Letter::Tau, Letter::T] {
            let img = self.image(l);
            if !img.is_zero() {
                degs.push(img.degree()? - l.degree(&ctx));
            }
        }
        let first = degs.first().copied().unwrap_or(0);
        degs.iter().all(|&d| d == first).then_some(first)
    }

    /// Graded Leibniz extension to an arbitrary series.
    pub fn apply(&self, a: &NcSeries<C>) -> NcSeries<C> {
        match self.parity() {
            Some(p) => self.apply_homogeneous(p, a),
            None => {
                let (even, odd) = self.parity_components();
                even.apply_homogeneous(Parity::Even, a).add(&odd.apply_homogeneous(Parity::Odd, a))
            }
        }
    }

    fn apply_homogeneous(&self, p: Parity, a: &NcSeries<C>) -> NcSeries<C> {
        let ctx = self.context();
        let v = self.tau.valuation().min(self.t.valuation());
        let prec = (a.precision() + v).saturating_sub(1).min(self.precision()).min(ctx.order());
        let mut out = NcSeries::zero(self.ring(), ctx).with_precision(prec);
        for (w, c) in a.terms() {
            for i in 0..w.len() {
                let prefix = w.prefix(i);
                let suffix = w.suffix_after(i);
                let sign = p.sign(prefix.parity(&ctx));
                for (u, d) in self.image(w.get(i)).terms() {
                    if prefix.len() + u.len() + suffix.len() <= prec {
                        out.add_term(prefix.concat(*u).concat(suffix), c.times(d).scale_int(sign));
                    }
                }
            }
        }
        out
    }

    /// Images of the operator composite `x ↦ self(inner(x))`. This is a
    /// derivation only in special cases; it is the building block of
    /// brackets and of the obstruction sums.
    pub fn composite_images(&self, inner: &Derivation<C>) -> Derivation<C> {
        Derivation { tau: self.apply(&inner.tau), t: self.apply(&inner.t) }
    }

    /// `[ξ, η] = ξη - (-1)^{|ξ||η|} ηξ`, extended bilinearly over parity
    /// components.
    pub fn bracket(&self, other: &Derivation<C>) -> Result<Derivation<C>> {
        if self.context() != other.context() || self.ring() != other.ring() {
            return Err(Error::ContextMismatch);
        }
        let comps = |d: &Derivation<C>| match d.parity() {
            Some(p) => vec![(p, d.clone())],
            None => {
                let (e, o) = d.parity_components();
                vec![(Parity::Even, e), (Parity::Odd, o)]
            }
        };
        let mut acc = Derivation::zero(self.ring(), self.context());
        for (p, x) in comps(self) {
            for (q, y) in comps(other) {
                let xy = x.composite_images(&y);
                let yx = y.composite_images(&x).scale_int(p.sign(q));
                acc = acc.add(&xy.sub(&yx));
            }
        }
        Ok(acc)
    }

    /// Tests `m∘m = 0` on both generators; `m` must be odd.
    pub fn square_zero_check(&self) -> Result<SquareZeroReport<C>> {
        if !self.has_parity(Parity::Odd) {
            return Err(Error::ParityViolation("square-zero test needs an odd derivation".into()));
        }
        let sq = self.composite_images(self);
        let witness = [Letter::Tau, Letter::T].into_iter().find_map(|l| {
            sq.image(l).terms().next().map(|(w, c)| (l, *w, c.clone()))
        });
        Ok(SquareZeroReport { witness })
    }

    pub fn is_square_zero(&self) -> Result<bool> {
        Ok(self.square_zero_check()?.holds())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        Ok(Derivation { tau: self.tau.try_add(&other.tau)?, t: self.t.try_add(&other.t)? })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("derivations from different contexts")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Derivation { tau: self.tau.neg(), t: self.t.neg() }
    }

    pub fn scale(&self, c: &C) -> Self {
        Derivation { tau: self.tau.scale(c), t: self.t.scale(c) }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        Derivation { tau: self.tau.scale_int(n), t: self.t.scale_int(n) }
    }

    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        Derivation { tau: self.tau.map_coefficients(&f), t: self.t.map_coefficients(&f) }
    }

    pub fn map_into<D: Scalar>(&self, ring: &D::Ring, f: impl Fn(&C) -> D) -> Derivation<D> {
        Derivation { tau: self.tau.map_into(ring, &f), t: self.t.map_into(ring, &f) }
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.tau.agrees_with(&other.tau) && self.t.agrees_with(&other.t)
    }

    /// First generator and word where the images disagree.
    pub fn first_difference(&self, other: &Self) -> Option<(Letter, Word)> {
        if let Some(w) = self.tau.first_difference(&other.tau) {
            return Some((Letter::Tau, w));
        }
        self.t.first_difference(&other.t).map(|w| (Letter::T, w))
    }
}

fn fmt_part<C: Scalar>(s: &NcSeries<C>, name: &str, f: &mut fmt::Formatter<'_>, first: &mut bool) -> fmt::Result {
    if s.is_zero() {
        return Ok(());
    }
    if !*first {
        f.write_str(" + ")?;
    }
    *first = false;
    let text = s.to_string();
    if has_top_level_sum(&text) {
        write!(f, "({text}) {name}")
    } else {
        write!(f, "{text} {name}")
    }
}

/// Whether a printed series has a `+` or `-` outside parentheses, past its
/// leading sign.
fn has_top_level_sum(text: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

impl<C: Scalar> fmt::Display for Derivation<C> {
    /// `A dtau + B dt`, the form accepted by the command line parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        fmt_part(&self.tau, "dtau", f, &mut first)?;
        fmt_part(&self.t, "dt", f, &mut first)?;
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A continuous unital algebra endomorphism, given by generator images
/// without constant terms.
#[derive(Clone, Debug)]
pub struct Endomorphism<C: Scalar> {
    tau: NcSeries<C>,
    t: NcSeries<C>,
}

impl<C: Scalar> Endomorphism<C> {
    pub fn new(tau: NcSeries<C>, t: NcSeries<C>) -> Result<Self> {
        if tau.context() != t.context() || tau.ring() != t.ring() {
            return Err(Error::ContextMismatch);
        }
        for s in [&tau, &t] {
            if !s.coefficient(Word::EMPTY).is_zero() {
                return Err(Error::ConstantTerm("generator image of an endomorphism".into()));
            }
        }
        Ok(Endomorphism { tau, t })
    }

    pub fn identity(ring: &C::Ring, ctx: GradingContext) -> Self {
        Endomorphism { tau: NcSeries::tau(ring, ctx), t: NcSeries::t(ring, ctx) }
    }

    /// `τ ↦ τ + G(t)`, `t ↦ F(t)`.
    pub fn from_pair(g: &CommSeries<C>, f: &CommSeries<C>) -> Result<Self> {
        let ctx = g.context();
        let tau = NcSeries::tau(g.ring(), ctx).try_add(&NcSeries::from_comm(g))?;
        Self::new(tau, NcSeries::from_comm(f))
    }

    /// Recovers `(G, F)` when the endomorphism has pair form.
    pub fn as_pair(&self) -> Option<(CommSeries<C>, CommSeries<C>)> {
        let ctx = self.context();
        let g = self.tau.sub(&NcSeries::tau(self.ring(), ctx)).to_comm()?;
        let f = self.t.to_comm()?;
        Some((g, f))
    }

    pub fn image(&self, l: Letter) -> &NcSeries<C> {
        match l {
            Letter::Tau => &self.tau,
            Letter::T => &self.t,
        }
    }

    pub fn context(&self) -> GradingContext {
        self.tau.context()
    }

    pub fn ring(&self) -> &C::Ring {
        self.tau.ring()
    }

    pub fn precision(&self) -> usize {
        self.tau.precision().min(self.t.precision())
    }

    /// Substitutes the generator images into `a`.
    pub fn apply(&self, a: &NcSeries<C>) -> NcSeries<C> {
        let ctx = self.context();
        let vmin = self.tau.valuation().min(self.t.valuation()).max(1);
        let mut prec = ((a.precision() + 1) * vmin - 1).min(ctx.order());
        let mut memo: HashMap<Word, NcSeries<C>> = HashMap::new();
        memo.insert(Word::EMPTY, NcSeries::one(self.ring(), ctx));
        let mut images = Vec::new();
        for (w, c) in a.terms() {
            let img = self.word_image(*w, &mut memo);
            prec = prec.min(img.precision());
            images.push((c.clone(), img));
        }
        let mut out = NcSeries::zero(self.ring(), ctx).with_precision(prec);
        for (c, img) in images {
            for (u, d) in img.terms() {
                out.add_term(*u, c.times(d));
            }
        }
        out
    }

    fn word_image(&self, w: Word, memo: &mut HashMap<Word, NcSeries<C>>) -> NcSeries<C> {
        if let Some(s) = memo.get(&w) {
            return s.clone();
        }
        let n = w.len();
        let head = self.word_image(w.prefix(n - 1), memo);
        let img = head.mul(self.image(w.get(n - 1)));
        memo.insert(w, img.clone());
        img
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Endomorphism<C>) -> Result<Endomorphism<C>> {
        if self.context() != other.context() || self.ring() != other.ring() {
            return Err(Error::ContextMismatch);
        }
        Ok(Endomorphism { tau: self.apply(&other.tau), t: self.apply(&other.t) })
    }

    /// Coefficients of `τ` and `t` in the two images, as rows
    /// `[[φ(τ)_τ, φ(τ)_t], [φ(t)_τ, φ(t)_t]]`.
    pub fn linear_part(&self) -> [[C; 2]; 2] {
        let tau = Word::letter(Letter::Tau);
        let t = Word::letter(Letter::T);
        [
            [self.tau.coefficient(tau), self.tau.coefficient(t)],
            [self.t.coefficient(tau), self.t.coefficient(t)],
        ]
    }

    /// Two-sided inverse, computed as the fixed point of
    /// `ψ = L⁻¹(x - H∘ψ)` where `L` is the linear part and `H` the rest.
    pub fn inverse(&self) -> Result<Endomorphism<C>> {
        let ctx = self.context();
        let ring = self.ring().clone();
        let [[a, b], [c, e]] = self.linear_part();
        let det = a.times(&e).minus(&b.times(&c));
        let det_inv = det.inverse().ok_or_else(|| Error::NotInvertible(format!("linear part has determinant {det}")))?;
        let li = [[e.times(&det_inv), b.negate().times(&det_inv)], [c.negate().times(&det_inv), a.times(&det_inv)]];
        let tau_w = Word::letter(Letter::Tau);
        let t_w = Word::letter(Letter::T);
        let strip = |s: &NcSeries<C>| {
            let mut h = s.clone();
            h.add_term(tau_w, s.coefficient(tau_w).negate());
            h.add_term(t_w, s.coefficient(t_w).negate());
            h
        };
        let h = [strip(&self.tau), strip(&self.t)];
        let x = [NcSeries::tau(&ring, ctx), NcSeries::t(&ring, ctx)];
        let combine = |r: [NcSeries<C>; 2]| -> [NcSeries<C>; 2] {
            [
                r[0].scale(&li[0][0]).add(&r[1].scale(&li[0][1])),
                r[1].scale(&li[1][1]).add(&r[0].scale(&li[1][0])),
            ]
        };
        let prec = self.precision();
        let [t0, t1] = combine(x.clone());
        let mut psi = Endomorphism { tau: t0, t: t1 };
        for _ in 0..prec {
            let r = [x[0].sub(&psi.apply(&h[0])), x[1].sub(&psi.apply(&h[1]))];
            let [n0, n1] = combine(r);
            let next = Endomorphism { tau: n0.with_precision(prec), t: n1.with_precision(prec) };
            let done = next.agrees_with(&psi) && next.precision() == psi.precision();
            psi = next;
            if done {
                break;
            }
        }
        Ok(psi)
    }

    /// `φ∘ξ∘φ⁻¹` on generators.
    pub fn conjugate(&self, xi: &Derivation<C>) -> Result<Derivation<C>> {
        let inv = self.inverse()?;
        Ok(self.conjugate_with(&inv, xi))
    }

    /// Conjugation with a precomputed inverse.
    pub fn conjugate_with(&self, inverse: &Endomorphism<C>, xi: &Derivation<C>) -> Derivation<C> {
        let img = |s: &NcSeries<C>| self.apply(&xi.apply(s));
        Derivation { tau: img(&inverse.tau), t: img(&inverse.t) }
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.tau.agrees_with(&other.tau) && self.t.agrees_with(&other.t)
    }

    pub fn is_identity(&self) -> bool {
        self.agrees_with(&Self::identity(self.ring(), self.context()))
    }

    pub fn map_into<D: Scalar>(&self, ring: &D::Ring, f: impl Fn(&C) -> D) -> Endomorphism<D> {
        Endomorphism { tau: self.tau.map_into(ring, &f), t: self.t.map_into(ring, &f) }
    }
}

impl<C: Scalar> fmt::Display for Endomorphism<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau -> {}, t -> {}", self.tau, self.t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;
    use crate::scalar::Rationals;
    use num_rational::BigRational;
    use Letter::{Tau, T};

    type Q = BigRational;

    fn s(ctx: GradingContext, terms: &[(&[Letter], i64, i64)]) -> NcSeries<Q> {
        NcSeries::from_terms(
            &Rationals,
            ctx,
            terms.iter().map(|(ls, a, b)| (Word::from_letters(ls), rational(*a, *b))),
        )
    }

    fn c(ctx: GradingContext, terms: &[(usize, i64, i64)]) -> CommSeries<Q> {
        let mut out = CommSeries::zero(&Rationals, ctx);
        for &(k, a, b) in terms {
            out = out.add(&CommSeries::monomial(&Rationals, ctx, k, rational(a, b)));
        }
        out
    }

    /// `τ ↦ τ²`, `t ↦ [τ, t]`.
    fn m0(ctx: GradingContext) -> Derivation<Q> {
        let tau = NcSeries::tau(&Rationals, ctx);
        let t = NcSeries::t(&Rationals, ctx);
        Derivation::new(tau.mul(&tau), tau.graded_commutator(&t).unwrap()).unwrap()
    }

    fn odd(n: usize) -> GradingContext {
        GradingContext::odd(n).unwrap()
    }

    #[test]
    fn leibniz_examples() {
        let ctx = odd(6);
        let m = m0(ctx);
        assert_eq!(m.apply(&NcSeries::t(&Rationals, ctx)).to_string(), "tau*t + t*tau");
        assert_eq!(m.apply(&s(ctx, &[(&[Tau, T], 1, 1)])).to_string(), "-tau*t*tau");
        assert!(m.apply(&NcSeries::one(&Rationals, ctx)).is_zero());
    }

    #[test]
    fn bracket_examples() {
        let ctx = odd(8);
        let m = m0(ctx);
        assert!(m.bracket(&m).unwrap().is_zero());
        let a = c(ctx, &[(1, 1, 1), (2, 3, 1), (3, -2, 1)]);
        let b = c(ctx, &[(2, 1, 1), (3, 5, 1)]);
        let xi = Derivation::normalised(&a, &b).unwrap();
        let expected = Derivation::normalised(&c(ctx, &[]), &a.odd_part().multiply_by_t().scale_int(2)).unwrap();
        assert!(xi.bracket(&m).unwrap().agrees_with(&expected));
        let even = Derivation::normalised(&c(ctx, &[(1, 1, 1)]), &c(ctx, &[(3, 1, 1)])).unwrap();
        assert_eq!(even.parity(), Some(Parity::Even));
        assert!(even.bracket(&even).unwrap().is_zero());
    }

    #[test]
    fn square_zero_examples() {
        let ctx = odd(8);
        assert!(m0(ctx).is_square_zero().unwrap());
        let pert = Derivation::normalised(&c(ctx, &[(2, 3, 1)]), &c(ctx, &[(2, -1, 2)])).unwrap();
        assert!(m0(ctx).add(&pert).is_square_zero().unwrap());
        let pert = Derivation::new(s(ctx, &[(&[Tau, T], 1, 1)]), NcSeries::zero(&Rationals, ctx)).unwrap();
        let bad = m0(ctx).add(&pert);
        let report = bad.square_zero_check().unwrap();
        let (l, w, coef) = report.witness.expect("witness");
        assert_eq!((l, w, coef), (Letter::Tau, Word::from_letters(&[Tau, Tau, T]), rational(-1, 1)));
        let even = Derivation::normalised(&c(ctx, &[(1, 1, 1)]), &c(ctx, &[])).unwrap();
        assert!(even.square_zero_check().is_err());
    }

    #[test]
    fn pair_composition_convention() {
        let ctx = odd(9);
        let p = Endomorphism::from_pair(&c(ctx, &[]), &c(ctx, &[(1, 2, 1)])).unwrap();
        let q = Endomorphism::from_pair(&c(ctx, &[(3, 1, 1)]), &c(ctx, &[(1, 1, 1)])).unwrap();
        let (g, f) = p.compose(&q).unwrap().as_pair().unwrap();
        assert_eq!(g.to_string(), "8*t^3");
        assert_eq!(f.to_string(), "2*t");
        let id = Endomorphism::identity(&Rationals, ctx);
        assert!(id.compose(&q).unwrap().agrees_with(&q));
    }

    #[test]
    fn inverse_examples() {
        let ctx = odd(9);
        let id = Endomorphism::<Q>::identity(&Rationals, ctx);
        assert!(id.inverse().unwrap().is_identity());
        let p = Endomorphism::from_pair(&c(ctx, &[]), &c(ctx, &[(1, 2, 1)])).unwrap();
        let (g, f) = p.inverse().unwrap().as_pair().unwrap();
        assert!(g.is_zero());
        assert_eq!(f.to_string(), "(1/2)*t");
        let q = Endomorphism::from_pair(&c(ctx, &[(3, 1, 1)]), &c(ctx, &[(1, 1, 1)])).unwrap();
        let (g, f) = q.inverse().unwrap().as_pair().unwrap();
        assert_eq!((g.to_string(), f.to_string()), ("-t^3".to_string(), "t".to_string()));
        let sing = Endomorphism::from_pair(&c(ctx, &[]), &c(ctx, &[(2, 1, 1)])).unwrap();
        assert!(matches!(sing.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn general_inverse_is_two_sided() {
        let ctx = odd(7);
        let phi = Endomorphism::new(
            s(ctx, &[(&[Tau], 1, 1), (&[T], 2, 1), (&[T, Tau], 1, 1)]),
            s(ctx, &[(&[T], 1, 1), (&[Tau], 1, 1), (&[Tau, Tau, T], -3, 1)]),
        )
        .unwrap();
        let psi = phi.inverse().unwrap();
        let id = Endomorphism::identity(&Rationals, ctx);
        assert!(psi.compose(&phi).unwrap().agrees_with(&id));
        assert!(phi.compose(&psi).unwrap().agrees_with(&id));
    }

    #[test]
    fn conjugation_examples() {
        let ctx = odd(9);
        let m = m0(ctx);
        let id = Endomorphism::identity(&Rationals, ctx);
        assert!(id.conjugate(&m).unwrap().agrees_with(&m));
        let g = c(ctx, &[(1, 1, 1), (3, -2, 1)]);
        let p = Endomorphism::from_pair(&g, &c(ctx, &[(1, 1, 1)])).unwrap();
        let expected = m.add(&Derivation::normalised(&g.mul(&g).neg(), &g.multiply_by_t().scale_int(2)).unwrap());
        assert!(p.conjugate(&m).unwrap().agrees_with(&expected));

        let f = c(ctx, &[(1, 1, 1), (3, 1, 1)]);
        let q = Endomorphism::from_pair(&g, &f).unwrap();
        let xi = Derivation::normalised(&c(ctx, &[(2, 1, 1)]), &c(ctx, &[])).unwrap();
        let expected = Derivation::normalised(&f.mul(&f), &c(ctx, &[])).unwrap();
        assert!(q.conjugate(&xi).unwrap().agrees_with(&expected));
    }

    #[test]
    fn display_form() {
        let ctx = odd(6);
        let xi = Derivation::normalised(&c(ctx, &[(2, 1, 1)]), &c(ctx, &[(1, 1, 1), (3, 1, 2)])).unwrap();
        assert_eq!(xi.to_string(), "t^2 dtau + (t + (1/2)*t^3) dt");
        assert_eq!(Derivation::<Q>::zero(&Rationals, ctx).to_string(), "0");
    }
}
