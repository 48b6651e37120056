//! The coefficient abstraction used by the series kernel.
//!
//! A [`Scalar`] is an element of an exact, evenly graded commutative ring.
//! Rings are runtime values (a truncated polynomial ring is only known once
//! its generators are parsed), so every scalar carries a handle to its ring
//! and constructors take that handle.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::BaseKind;

/// Exact commutative coefficients.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Ring handle shared by all elements of one ring.
    type Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn zero(ring: &Self::Ring) -> Self;
    fn one(ring: &Self::Ring) -> Self;
    fn from_int(ring: &Self::Ring, n: i64) -> Self;
    fn ring(&self) -> Self::Ring;
    fn is_zero(&self) -> bool;

    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;

    /// Multiplicative inverse when `self` is a unit.
    fn inverse(&self) -> Option<Self>;
    /// Some `q` with `q * divisor == self`, if one exists and is found.
    fn divide_exact(&self, divisor: &Self) -> Option<Self>;
    /// Internal degree when homogeneous (zero reports `Some(0)`).
    fn degree(&self) -> Option<i64>;

    /// Ground ring over which the ring is a finite free module.
    fn base_kind(ring: &Self::Ring) -> BaseKind;
    /// Basis of the ring as a module over its ground ring.
    fn module_basis(ring: &Self::Ring) -> Vec<Self>;
    /// Coordinates in [`Scalar::module_basis`] order.
    fn coordinates(&self) -> Vec<BigRational>;
    fn from_coordinates(ring: &Self::Ring, coords: &[BigRational]) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ring())
    }

    fn scale_int(&self, n: i64) -> Self {
        self.times(&Self::from_int(&self.ring(), n))
    }

    fn contains_rationals(ring: &Self::Ring) -> bool {
        Self::base_kind(ring) == BaseKind::Rationals
    }
}

/// Ring handle for [`BigRational`] coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Ring handle for [`BigInt`] coefficients.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl Scalar for BigRational {
    type Ring = Rationals;

    fn zero(_: &Rationals) -> Self {
        Zero::zero()
    }
    fn one(_: &Rationals) -> Self {
        One::one()
    }
    fn from_int(_: &Rationals, n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn ring(&self) -> Rationals {
        Rationals
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        (!Zero::is_zero(divisor)).then(|| self / divisor)
    }
    fn degree(&self) -> Option<i64> {
        Some(0)
    }
    fn base_kind(_: &Rationals) -> BaseKind {
        BaseKind::Rationals
    }
    fn module_basis(_: &Rationals) -> Vec<Self> {
        vec![One::one()]
    }
    fn coordinates(&self) -> Vec<BigRational> {
        vec![self.clone()]
    }
    fn from_coordinates(_: &Rationals, coords: &[BigRational]) -> Self {
        coords[0].clone()
    }
}

impl Scalar for BigInt {
    type Ring = Integers;

    fn zero(_: &Integers) -> Self {
        Zero::zero()
    }
    fn one(_: &Integers) -> Self {
        One::one()
    }
    fn from_int(_: &Integers, n: i64) -> Self {
        n.into()
    }
    fn ring(&self) -> Integers {
        Integers
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (self.abs() == One::one()).then(|| self.clone())
    }
    fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        if Zero::is_zero(divisor) {
            return Zero::is_zero(self).then(Zero::zero);
        }
        Zero::is_zero(&(self % divisor)).then(|| self / divisor)
    }
    fn degree(&self) -> Option<i64> {
        Some(0)
    }
    fn base_kind(_: &Integers) -> BaseKind {
        BaseKind::Integers
    }
    fn module_basis(_: &Integers) -> Vec<Self> {
        vec![One::one()]
    }
    fn coordinates(&self) -> Vec<BigRational> {
        vec![BigRational::from_integer(self.clone())]
    }
    fn from_coordinates(_: &Integers, coords: &[BigRational]) -> Self {
        coords[0].to_integer()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(Scalar::inverse(&q(2, 1)), Some(q(1, 2)));
        assert_eq!(Scalar::inverse(&q(0, 1)), None);
    }

    #[test]
    fn integer_units_and_division() {
        let two = BigInt::from(2);
        assert_eq!(Scalar::inverse(&two), None);
        assert_eq!(Scalar::inverse(&BigInt::from(-1)), Some(BigInt::from(-1)));
        assert_eq!(BigInt::from(6).divide_exact(&two), Some(BigInt::from(3)));
        assert_eq!(BigInt::from(7).divide_exact(&two), None);
    }

    #[test]
    fn contains_rationals_by_base() {
        assert!(BigRational::contains_rationals(&Rationals));
        assert!(!BigInt::contains_rationals(&Integers));
    }
}
