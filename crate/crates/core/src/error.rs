use thiserror::Error;

/// Errors raised by the library's constructors and checked operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a group: {reason} (witness {witness:?})")]
    NotAGroup { reason: String, witness: Vec<usize> },
    #[error("group order {order} exceeds bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("subgroup is not normal: conjugation by {witness} moves it")]
    NotNormal { witness: usize },
    #[error("element set {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("topology is not right invariant: witness (x={x}, y={y}, g={g})")]
    NotRightInvariant { x: usize, y: usize, g: usize },
    #[error("map is not surjective: point {0} has empty fibre")]
    NotSurjective(usize),
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("function subspace is not translation invariant (basis vector {basis}, element {g})")]
    NotTranslationInvariant { basis: usize, g: usize },
    #[error("function is not continuous: differs at {x} and {y} inside one cell")]
    FNotContinuous { x: usize, y: usize },
    #[error("measure is not in M_C")]
    MuNotInMC,
    #[error("measure is not in M_sigma")]
    MuNotInMSigma,
    #[error("measure has zero total mass")]
    ZeroTotalMass,
    #[error("linear system for the Haar measure has no normalisable solution")]
    NoSolution,
    #[error("measure is not right invariant")]
    NotInvariant,
    #[error("precondition failed: {which} (witness {witness:?})")]
    PreconditionFailed { which: String, witness: Vec<usize> },
    #[error("normal system is not certified: {0}")]
    SystemNotCertified(String),
    #[error("permutation {index} is not an automorphism: witness ({a}, {b})")]
    NotAutomorphism { index: usize, a: usize, b: usize },
    #[error("acting set is not closed under composition and inverse")]
    NotClosed,
    #[error("multiplier {u} is not an involution modulo {n}")]
    NotInvolution { u: u64, n: u64 },
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
