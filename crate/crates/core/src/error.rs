//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("value is zero: {0}")]
    ZeroValue(&'static str),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid rational literal `{0}`")]
    BadRational(String),

    #[error("invalid cyclotomic data: {0}")]
    BadCyclotomic(String),

    #[error("norm is not a rational integer; input was not an algebraic integer")]
    NotAlgebraicInteger,

    #[error("cannot canonicalize the zero monomial")]
    ZeroMonomial,

    #[error("specialization carries a non-trivial root-of-unity twist")]
    TwistedSpecialization,

    #[error("twist at slot {0} is not a root of unity")]
    BadTwist(usize),

    #[error("specialization kills factor {factor}: constant factor evaluates to zero")]
    SpecializationKillsFactor { factor: usize },

    #[error("empty Laurent polynomial has no valuation or degree")]
    EmptyPolynomial,

    #[error("hyperplane normal must be a nonzero primitive integer vector")]
    BadHyperplane,

    #[error("partition universe mismatch: {left} vs {right}")]
    UniverseMismatch { left: usize, right: usize },

    #[error("join of an empty list of partitions")]
    EmptyJoin,

    #[error("invalid partition: {0}")]
    BadPartition(String),

    #[error("no stored block partition for containing hyperplane `{0}`")]
    MissingPartition(String),

    #[error("no Schur model for character index {0}")]
    MissingModel(usize),

    #[error("sign enumeration over {0} classes exceeds the hard cap of {max}", max = crate::verifier::SIGN_CLASS_CAP)]
    SignCapExceeded(usize),

    #[error("syntax error: {0}")]
    Syntax(String),

    #[error("semantic violation: {0}")]
    Semantic(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
