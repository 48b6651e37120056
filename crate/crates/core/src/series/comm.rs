use std::fmt;

use super::context::{GradingContext, Parity};
use super::write_term;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A truncated power series in `t` alone, stored densely.
///
/// The optional power-parity flag records that only even (or only odd)
/// powers may occur; flagged series are checked on construction.
#[derive(Clone, Debug)]
pub struct CommSeries<C: Scalar> {
    ctx: GradingContext,
    ring: C::Ring,
    coeffs: Vec<C>,
    flag: Option<Parity>,
}

impl<C: Scalar> CommSeries<C> {
    pub fn zero(ring: &C::Ring, ctx: GradingContext) -> Self {
        CommSeries { ctx, ring: ring.clone(), coeffs: vec![C::zero(ring); ctx.order() + 1], flag: None }
    }

    pub fn t(ring: &C::Ring, ctx: GradingContext) -> Self {
        Self::monomial(ring, ctx, 1, C::one(ring))
    }

    pub fn monomial(ring: &C::Ring, ctx: GradingContext, k: usize, c: C) -> Self {
        let mut s = Self::zero(ring, ctx);
        if k < s.coeffs.len() {
            s.coeffs[k] = c;
        }
        s
    }

    /// Coefficients indexed by power; entries beyond the order are dropped.
    pub fn from_coeffs(ring: &C::Ring, ctx: GradingContext, coeffs: Vec<C>) -> Self {
        let mut s = Self::zero(ring, ctx);
        for (k, c) in coeffs.into_iter().enumerate().take(s.coeffs.len()) {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn context(&self) -> GradingContext {
        self.ctx
    }

    pub fn ring(&self) -> &C::Ring {
        &self.ring
    }

    /// Highest power whose coefficient is known.
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn with_precision(mut self, p: usize) -> Self {
        self.coeffs.truncate(p.min(self.precision()) + 1);
        self
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> C {
        self.coeffs.get(k).cloned().unwrap_or_else(|| C::zero(&self.ring))
    }

    pub fn constant_term(&self) -> C {
        self.coeffs[0].clone()
    }

    pub fn flag(&self) -> Option<Parity> {
        self.flag
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Lowest power with a nonzero coefficient, or `precision + 1`.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    /// Attaches a power-parity flag after checking it.
    pub fn flagged(mut self, p: Parity) -> Result<Self> {
        let bad = self.coeffs.iter().enumerate().find(|(k, c)| Parity::of(*k as i64) != p && !c.is_zero());
        if let Some((k, _)) = bad {
            let kind = if p == Parity::Even { "even" } else { "odd" };
            return Err(Error::ParityViolation(format!("t^{k} in a series declared {kind}")));
        }
        self.flag = Some(p);
        Ok(self)
    }

    pub fn unflagged(mut self) -> Self {
        self.flag = None;
        self
    }

    /// Whether only powers of the given parity occur.
    pub fn has_only(&self, p: Parity) -> bool {
        self.coeffs.iter().enumerate().all(|(k, c)| Parity::of(k as i64) == p || c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx && self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn joint_flag(&self, other: &Self) -> Option<Parity> {
        (self.flag == other.flag).then_some(self.flag).flatten()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = self.precision().min(other.precision());
        let coeffs = (0..=p).map(|k| self.coeffs[k].plus(&other.coeffs[k])).collect();
        Ok(CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs, flag: self.joint_flag(other) })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Product, trusted through `min(p_a + val_b, p_b + val_a)`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let p = (self.precision() + other.valuation())
            .min(other.precision() + self.valuation())
            .min(self.ctx.order());
        let mut coeffs = vec![C::zero(&self.ring); p + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                if i + j <= p {
                    coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
                }
            }
        }
        let flag = match (self.flag, other.flag) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        Ok(CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs, flag })
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

    pub fn map_coefficients(&self, f: impl Fn(&C) -> C) -> Self {
        CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs: self.coeffs.iter().map(f).collect(), flag: self.flag }
    }

    pub fn map_into<D: Scalar>(&self, ring: &D::Ring, f: impl Fn(&C) -> D) -> CommSeries<D> {
        CommSeries { ctx: self.ctx, ring: ring.clone(), coeffs: self.coeffs.iter().map(f).collect(), flag: self.flag }
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::monomial(&self.ring, self.ctx, 0, C::one(&self.ring));
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `f(g(t))`, requiring `g` to have no constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.check(g)?;
        if !g.constant_term().is_zero() {
            return Err(Error::ConstantTerm("inner series of a composition".into()));
        }
        let vg = g.valuation().max(1);
        let tail = (self.precision() + 1) * vg - 1;
        let p = tail.min(g.precision().max(if self.is_constant() { tail } else { 0 })).min(self.ctx.order());
        let mut acc = Self::zero(&self.ring, self.ctx).with_precision(p);
        let mut power = Self::monomial(&self.ring, self.ctx, 0, C::one(&self.ring));
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = power.mul(g);
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale(c));
            }
            if power.valuation() > p {
                break;
            }
        }
        let flag = match (self.flag, g.flag) {
            (Some(Parity::Odd), Some(Parity::Odd)) => Some(Parity::Odd),
            (Some(Parity::Even), Some(_)) => Some(Parity::Even),
            _ => None,
        };
        Ok(CommSeries { flag, ..acc.with_precision(p) })
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(C::is_zero)
    }

    /// `a'(t) = Σ i a_i t^{i-1}`; one order of precision is consumed.
    pub fn derivative(&self) -> Self {
        let p = self.precision().saturating_sub(1);
        let mut coeffs = vec![C::zero(&self.ring); p + 1];
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if i - 1 <= p {
                coeffs[i - 1] = c.scale_int(i as i64);
            }
        }
        let flag = self.flag.map(|f| f + Parity::Odd);
        CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs, flag }
    }

    /// The functional inverse `g` with `f(g(t)) = t`, solved coefficient by
    /// coefficient. Needs `f(0) = 0` and a unit linear coefficient.
    pub fn inverse(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm("series to invert".into()));
        }
        let f1_inv = self
            .coefficient(1)
            .inverse()
            .ok_or_else(|| Error::NotInvertible(format!("linear coefficient {}", self.coefficient(1))))?;
        let p = self.precision();
        let mut g = Self::monomial(&self.ring, self.ctx, 1, f1_inv.clone()).with_precision(p);
        for k in 2..=p {
            let residual = self.compose(&g)?.coefficient(k);
            if !residual.is_zero() {
                g.coeffs[k] = residual.negate().times(&f1_inv);
            }
        }
        let flag = (self.flag == Some(Parity::Odd)).then_some(Parity::Odd);
        Ok(CommSeries { flag, ..g })
    }

    /// Multiplicative inverse `1/f`; needs a unit constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0_inv = self
            .constant_term()
            .inverse()
            .ok_or_else(|| Error::NotInvertible(format!("constant term {}", self.constant_term())))?;
        let p = self.precision();
        let mut g: Vec<C> = Vec::with_capacity(p + 1);
        g.push(c0_inv.clone());
        for k in 1..=p {
            let mut acc = C::zero(&self.ring);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc = acc.plus(&self.coeffs[j].times(&g[k - j]));
                }
            }
            g.push(acc.negate().times(&c0_inv));
        }
        let flag = (self.flag == Some(Parity::Even)).then_some(Parity::Even);
        Ok(CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs: g, flag })
    }

    /// `w̃(t) = w(√t)` for a series with only even powers.
    pub fn tilde(&self) -> Result<Self> {
        if !self.has_only(Parity::Even) {
            return Err(Error::ParityViolation("tilde needs a series in even powers".into()));
        }
        let p = self.precision() / 2;
        let coeffs = (0..=p).map(|i| self.coeffs[2 * i].clone()).collect();
        Ok(CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs, flag: None })
    }

    /// Exact shift `f / t`; the top order is lost.
    pub fn divide_by_t(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm("series divided by t".into()));
        }
        let coeffs: Vec<C> = self.coeffs[1..].to_vec();
        let flag = self.flag.map(|f| f + Parity::Odd);
        let coeffs = if coeffs.is_empty() { vec![C::zero(&self.ring)] } else { coeffs };
        Ok(CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs, flag })
    }

    /// `f / 2t`, requiring 2 to be a unit.
    pub fn divide_by_2t(&self) -> Result<Self> {
        let half = C::from_int(&self.ring, 2).inverse().ok_or(Error::TwoNotInvertible)?;
        Ok(self.divide_by_t()?.scale(&half))
    }

    /// `t * f`, gaining one order of precision (up to the context order).
    pub fn multiply_by_t(&self) -> Self {
        let p = (self.precision() + 1).min(self.ctx.order());
        let mut coeffs = vec![C::zero(&self.ring)];
        coeffs.extend(self.coeffs.iter().take(p).cloned());
        let flag = self.flag.map(|f| f + Parity::Odd);
        CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs, flag }
    }

    fn part(&self, p: Parity) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if Parity::of(k as i64) == p { c.clone() } else { C::zero(&self.ring) })
            .collect();
        CommSeries { ctx: self.ctx, ring: self.ring.clone(), coeffs, flag: Some(p) }
    }

    pub fn even_part(&self) -> Self {
        self.part(Parity::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.part(Parity::Odd)
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Lowest power where the two series disagree within joint precision.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        if self.ctx != other.ctx || self.ring != other.ring {
            return Some(0);
        }
        let p = self.precision().min(other.precision());
        (0..=p).find(|&k| self.coeffs[k] != other.coeffs[k])
    }

    /// Checks that the coefficient of `t^k` has degree `expected(k)`.
    pub fn check_degrees(&self, what: &str, expected: impl Fn(usize) -> i64) -> Result<()> {
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            if c.degree() != Some(expected(k)) {
                return Err(Error::DegreeMismatch(format!(
                    "coefficient of t^{k} in {what} should have degree {}",
                    expected(k)
                )));
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Display for CommSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write_term(f, first, &c.to_string(), &mono)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;
    use crate::scalar::{Integers, Rationals};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type Q = CommSeries<BigRational>;

    fn ctx(n: usize) -> GradingContext {
        GradingContext::odd(n).unwrap()
    }

    fn poly(n: usize, cs: &[(usize, i64, i64)]) -> Q {
        let mut s = Q::zero(&Rationals, ctx(n));
        for &(k, a, b) in cs {
            s = s.add(&Q::monomial(&Rationals, ctx(n), k, rational(a, b)));
        }
        s
    }

    #[test]
    fn composition_examples() {
        let f = poly(8, &[(2, 1, 1)]);
        let g = poly(8, &[(1, 1, 1), (3, 1, 1)]);
        assert_eq!(f.compose(&g).unwrap().to_string(), "t^2 + 2*t^4 + t^6");
        let t = poly(8, &[(1, 1, 1)]);
        assert!(f.compose(&t).unwrap().agrees_with(&f));
        assert!(t.compose(&g).unwrap().agrees_with(&g));
        assert!(f.compose(&poly(8, &[(0, 1, 1)])).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(poly(8, &[(3, 1, 1)]).derivative().to_string(), "3*t^2");
        assert_eq!(poly(8, &[(4, 1, 1)]).derivative().to_string(), "4*t^3");
        assert!(Q::zero(&Rationals, ctx(8)).derivative().is_zero());
    }

    #[test]
    fn inverse_examples() {
        let t = poly(9, &[(1, 1, 1)]);
        assert!(t.inverse().unwrap().agrees_with(&t));
        assert_eq!(poly(9, &[(1, 2, 1)]).inverse().unwrap().to_string(), "(1/2)*t");
        let g = poly(9, &[(1, 1, 1), (3, 1, 1)]).inverse().unwrap();
        assert_eq!(g.to_string(), "t - t^3 + 3*t^5 - 12*t^7 + 55*t^9");
        let z = CommSeries::<BigInt>::monomial(&Integers, ctx(5), 1, BigInt::from(2));
        assert!(matches!(z.inverse(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(poly(8, &[(4, 1, 1), (6, 2, 1)]).tilde().unwrap().to_string(), "t^2 + 2*t^3");
        assert_eq!(poly(8, &[(6, 1, 1)]).tilde().unwrap().to_string(), "t^3");
        assert!(Q::zero(&Rationals, ctx(8)).tilde().unwrap().is_zero());
        assert!(poly(8, &[(3, 1, 1)]).tilde().is_err());
    }

    #[test]
    fn division_by_t() {
        let v = poly(8, &[(2, 3, 1)]);
        let h = v.divide_by_2t().unwrap();
        assert_eq!(h.to_string(), "(3/2)*t");
        assert_eq!(h.precision(), 7);
        assert_eq!(poly(8, &[(3, 1, 1), (5, 1, 1)]).divide_by_t().unwrap().to_string(), "t^2 + t^4");
        let z = CommSeries::<BigInt>::monomial(&Integers, ctx(5), 2, BigInt::from(2));
        assert_eq!(z.divide_by_2t().unwrap_err(), Error::TwoNotInvertible);
    }

    #[test]
    fn flags() {
        let odd = poly(8, &[(1, 1, 1), (3, 1, 1)]).flagged(Parity::Odd).unwrap();
        assert_eq!(odd.mul(&odd).flag(), Some(Parity::Even));
        assert_eq!(odd.compose(&odd).unwrap().flag(), Some(Parity::Odd));
        assert!(poly(8, &[(2, 1, 1)]).flagged(Parity::Odd).is_err());
    }

    #[test]
    fn multiply_by_t_recovers_precision() {
        let v = poly(8, &[(2, 1, 1), (8, 1, 1)]);
        let back = v.divide_by_t().unwrap().multiply_by_t();
        assert_eq!(back.precision(), 8);
        assert!(back.agrees_with(&v));
    }
}
