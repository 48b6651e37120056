use std::ops::Add;

use crate::error::{Error, Result};

/// Parity of a graded object. Signs only ever depend on parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self * other)`.
    pub fn sign(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Grading data shared by all series in one computation.
///
/// `|τ| = -1`, `|t| = -(d + 2)`, and series are truncated beyond word length
/// (or `t`-power) `order`. In strict mode, structures additionally check
/// coefficient degrees against this grading.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GradingContext {
    d: i64,
    order: usize,
    strict: bool,
}

/// Words are packed into 64 bits.
pub const MAX_ORDER: usize = 63;

impl GradingContext {
    pub fn new(d: i64, order: usize) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidOrder(order));
        }
        Ok(GradingContext { d, order, strict: false })
    }

    /// Odd Moore algebras (`d = 1`).
    pub fn odd(order: usize) -> Result<Self> {
        Self::new(1, order)
    }

    /// Even Moore algebras (`d = 0`).
    pub fn even(order: usize) -> Result<Self> {
        Self::new(0, order)
    }

    pub fn strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }

    pub fn with_order(self, order: usize) -> Result<Self> {
        Ok(GradingContext { order: Self::new(self.d, order)?.order, ..self })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn t_parity(&self) -> Parity {
        Parity::of(self.d)
    }

    pub fn t_is_odd(&self) -> bool {
        self.t_parity().is_odd()
    }

    pub fn tau_degree(&self) -> i64 {
        -1
    }

    pub fn t_degree(&self) -> i64 {
        -(self.d + 2)
    }
}
