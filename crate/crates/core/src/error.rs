use thiserror::Error;

/// Failures reported by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator {name} has odd degree {degree}; coefficient rings are evenly graded")]
    OddGeneratorDegree { name: String, degree: i64 },
    #[error("modulus {0} is too small, need n >= 2")]
    ModulusTooSmall(u64),
    #[error("duplicate generator name {0}")]
    DuplicateGenerator(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("operands live in different rings")]
    MixedRings,
    #[error("value {0} is not representable in this ring")]
    NotRepresentable(String),
    #[error("grading contexts or coefficient rings do not match")]
    ContextMismatch,
    #[error("truncation order must be between 1 and 63, got {0}")]
    InvalidOrder(usize),
    #[error("nonzero constant term in {0}")]
    ConstantTerm(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("2 is not invertible in the coefficient ring")]
    TwoNotInvertible,
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("derivation is not normalised (images must be series in t without constant term)")]
    NotNormalised,
    #[error("degree check failed: {0}")]
    DegreeMismatch(String),
    #[error("target is not a cocycle")]
    NotACocycle,
    #[error("structure has v != 0; reduce to normal form first")]
    VNotZero,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("insufficient precision: need order {needed}, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("ring map is not compatible with the augmentations: {0}")]
    NotAugmented(String),
    #[error("gauge pair is not pointed: {0}")]
    NotPointed(String),
    #[error("deformation is not based at the expected structure")]
    WrongBase,
    #[error("jet fails the structure equation at order {0}")]
    InvalidJet(usize),
    #[error("integration requires the rationals in the coefficient ring")]
    RequiresRationals,
    #[error("inputs are not equivalent: {0}")]
    NotEquivalent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
