//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieqError {
    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("linear system has no solution")]
    NoSolution,

    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("type spec parse error at position {position}: {message}")]
    ParseError { position: usize, message: String },

    #[error("unsupported module kind `{kind}` for type {type_name}")]
    UnsupportedKind { kind: String, type_name: String },

    #[error("operation requires a simple root system")]
    NotSimple,

    #[error("operation requires a semisimple root system with at least two factors")]
    NotSemisimple,

    #[error("{0} is not a root")]
    NotARoot(String),

    #[error("weight is not integral: {0}")]
    NonIntegralWeight(String),

    #[error("weight set violates the string property at {0}")]
    StringPropertyViolation(String),

    #[error("integrality violation: {0}")]
    IntegralityViolation(String),

    #[error("no invariant inner product found by the diagonal strategy")]
    InnerProductConstruction,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("verification counterexample: {0}")]
    Counterexample(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("not a subalgebra: {0}")]
    NotASubalgebra(String),
}

pub type Result<T> = std::result::Result<T, LieqError>;
