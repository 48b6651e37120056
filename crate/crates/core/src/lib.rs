//! Exact computer algebra for Moore algebras on the cobar side.
//!
//! Structures are continuous derivations of the completed free algebra on
//! `τ` and `t`; everything here is computed with exact coefficients in a
//! runtime-described graded ring and truncated at a fixed word length.

pub mod calculus;
pub mod deform;
pub mod error;
pub mod hochschild;
pub mod linalg;
pub mod moore;
pub mod ring;
pub mod scalar;
pub mod series;

pub use calculus::{Derivation, Endomorphism};
pub use error::{Error, Result};
pub use moore::{normal_form, verify_equivalence, GaugePair, MooreData, MooreStructure};
pub use ring::{make_ring, Generator, Ring, RingElement, RingSpec};
pub use scalar::{Integers, Rationals, Scalar};
pub use series::{CommSeries, GradingContext, Letter, NcSeries, Parity, Word};

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

pub type QSeries = NcSeries<Rational>;
pub type QCommSeries = CommSeries<Rational>;
pub type Series = NcSeries<RingElement>;
pub type RingCommSeries = CommSeries<RingElement>;
