use std::collections::BTreeMap;
use std::fmt;

use super::comm::CommSeries;
use super::context::{GradingContext, Parity};
use super::word::{Letter, Word};
use super::write_term;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A truncated series in the free algebra on `τ` and `t`.
///
/// Terms are kept in canonical word order with no zero coefficients and no
/// word longer than the precision.
#[derive(Clone, Debug)]
pub struct NcSeries<C: Scalar> {
    ctx: GradingContext,
    ring: C::Ring,
    prec: usize,
    terms: BTreeMap<Word, C>,
}

impl<C: Scalar> NcSeries<C> {
    pub fn zero(ring: &C::Ring, ctx: GradingContext) -> Self {
        NcSeries { ctx, ring: ring.clone(), prec: ctx.order(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &C::Ring, ctx: GradingContext) -> Self {
        Self::monomial(ring, ctx, Word::EMPTY, C::one(ring))
    }

    pub fn tau(ring: &C::Ring, ctx: GradingContext) -> Self {
        Self::monomial(ring, ctx, Word::letter(Letter::Tau), C::one(ring))
    }

    pub fn t(ring: &C::Ring, ctx: GradingContext) -> Self {
        Self::monomial(ring, ctx, Word::letter(Letter::T), C::one(ring))
    }

    pub fn letter(ring: &C::Ring, ctx: GradingContext, l: Letter) -> Self {
        Self::monomial(ring, ctx, Word::letter(l), C::one(ring))
    }

    pub fn monomial(ring: &C::Ring, ctx: GradingContext, word: Word, c: C) -> Self {
        Self::from_terms(ring, ctx, std::iter::once((word, c)))
    }

    pub fn constant(c: C, ctx: GradingContext) -> Self {
        let ring = c.ring();
        Self::monomial(&ring, ctx, Word::EMPTY, c)
    }

    /// Sums the given terms, dropping zeros and words beyond the order.
    pub fn from_terms(ring: &C::Ring, ctx: GradingContext, terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut s = Self::zero(ring, ctx);
        for (w, c) in terms {
            s.add_term(w, c);
        }
        s
    }

    /// Adds `c * word` in place (ignored beyond the precision).
    pub fn add_term(&mut self, word: Word, c: C) {
        if word.len() > self.prec || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(existing) => {
                let sum = existing.plus(&c);
                if sum.is_zero() {
                    self.terms.remove(&word);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(word, c);
            }
        }
    }

    pub fn context(&self) -> GradingContext {
        self.ctx
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    /// Word length through which coefficients are known.
    pub fn precision(&self) -> usize {
        self.prec
    }

    /// Lowers the precision, discarding longer words.
    pub fn with_precision(mut self, p: usize) -> Self {
        let p = p.min(self.prec);
        self.prec = p;
        self.terms.retain(|w, _| w.len() <= p);
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: Word) -> C {
        self.terms.get(&w).cloned().unwrap_or_else(|| C::zero(&self.ring))
    }

    /// Zero through its precision.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shortest word length present, or `precision + 1` when zero.
    pub fn valuation(&self) -> usize {
        self.terms.keys().map(|w| w.len()).min().unwrap_or(self.prec + 1)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx && self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone().with_precision(other.prec);
        for (w, c) in &other.terms {
            out.add_term(*w, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Word-concatenation product. The result is trusted through
    /// `min(p_a + val_b, p_b + val_a)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let prec = (self.prec + other.valuation()).min(other.prec + self.valuation()).min(self.ctx.order());
        let mut out = NcSeries { ctx: self.ctx, ring: self.ring.clone(), prec, terms: BTreeMap::new() };
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                if w1.len() + w2.len() <= prec {
                    out.add_term(w1.concat(*w2), c1.times(c2));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("series from different contexts")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("series from different contexts")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("series from different contexts")
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| c.negate())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coefficients(|a| c.times(a))
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.map_coefficients(|a| a.scale_int(n))
    }

    /// Applies `f` to every coefficient, keeping words and precision.
    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = NcSeries { ctx: self.ctx, ring: self.ring.clone(), prec: self.prec, terms: BTreeMap::new() };
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }

    /// Moves the series into another coefficient ring.
    pub fn map_into<D: Scalar>(&self, ring: &D::Ring, f: impl Fn(&C) -> D) -> NcSeries<D> {
        let mut out = NcSeries::<D>::zero(ring, self.ctx).with_precision(self.prec);
        for (w, c) in &self.terms {
            out.add_term(*w, f(c));
        }
        out
    }

    /// Splits into the even and odd parity parts.
    pub fn parity_components(&self) -> (Self, Self) {
        let mut even = NcSeries { ctx: self.ctx, ring: self.ring.clone(), prec: self.prec, terms: BTreeMap::new() };
        let mut odd = even.clone();
        for (w, c) in &self.terms {
            match w.parity(&self.ctx) {
                Parity::Even => even.terms.insert(*w, c.clone()),
                Parity::Odd => odd.terms.insert(*w, c.clone()),
            };
        }
        (even, odd)
    }

    /// Parity when homogeneous; the zero series counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|w| w.parity(&self.ctx));
        let first = ps.next().unwrap_or(Parity::Even);
        ps.all(|p| p == first).then_some(first)
    }

    /// Internal degree when every term has the same degree.
    pub fn degree(&self) -> Option<i64> {
        let mut ds = self.terms.iter().map(|(w, c)| c.degree().map(|d| d + w.degree(&self.ctx)));
        let first = match ds.next() {
            None => return Some(0),
            Some(d) => d?,
        };
        ds.all(|d| d == Some(first)).then_some(first)
    }

    /// `ab - (-1)^{|a||b|} ba` for parity-homogeneous `a`, `b`.
    pub fn graded_commutator(&self, other: &Self) -> Result<Self> {
        let pa = self.parity().ok_or_else(|| Error::ParityViolation("left factor is not homogeneous".into()))?;
        let pb = other.parity().ok_or_else(|| Error::ParityViolation("right factor is not homogeneous".into()))?;
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        Ok(ab.sub(&ba.scale_int(pa.sign(pb))))
    }

    /// Equality through the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// The first word (in canonical order) where the two series disagree.
    pub fn first_difference(&self, other: &Self) -> Option<Word> {
        if self.ctx != other.ctx || self.ring != other.ring {
            return Some(Word::EMPTY);
        }
        let p = self.prec.min(other.prec);
        let diff = self.sub(other);
        diff.terms.keys().copied().find(|w| w.len() <= p)
    }

    /// Whether every word is a power of `t` (no `τ`).
    pub fn is_pure_t(&self) -> bool {
        self.terms.keys().all(|w| w.is_pure_t())
    }

    /// The series as a commutative series in `t`, if it has no `τ`.
    pub fn to_comm(&self) -> Option<CommSeries<C>> {
        if !self.is_pure_t() {
            return None;
        }
        let mut coeffs = vec![C::zero(&self.ring); self.prec + 1];
        for (w, c) in &self.terms {
            coeffs[w.len()] = c.clone();
        }
        Some(CommSeries::from_coeffs(&self.ring, self.ctx, coeffs).with_precision(self.prec))
    }

    pub fn from_comm(s: &CommSeries<C>) -> Self {
        let mut out = Self::zero(s.ring(), s.context()).with_precision(s.precision());
        for (k, c) in s.coefficients().iter().enumerate() {
            out.add_term(Word::t_power(k), c.clone());
        }
        out
    }

    /// Checks every term against an expected total degree.
    pub fn check_degree(&self, expected: i64) -> Result<()> {
        for (w, c) in &self.terms {
            match c.degree() {
                Some(d) if d + w.degree(&self.ctx) == expected => {}
                _ => {
                    return Err(Error::DegreeMismatch(format!(
                        "term {c}*{w} does not have degree {expected}"
                    )))
                }
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Display for NcSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let mono = if w.is_empty() { String::new() } else { w.to_string() };
            write_term(f, i == 0, &c.to_string(), &mono)?;
        }
        Ok(())
    }
}
