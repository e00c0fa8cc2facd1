use std::path::PathBuf;

use thiserror::Error;

/// Every failure the pipeline can report.
///
/// Several variants are recoverable signals rather than hard failures:
/// [`Error::AmbiguousRounding`] and [`Error::AmbiguousComparison`] mean
/// "raise the working precision and recompute", and
/// [`Error::HypothesisFailed`] means "retry the reduction step with a larger
/// lattice scale".
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("logarithm of a non-positive interval")]
    NonPositiveArgument,
    #[error("interval does not determine a unique nearest integer")]
    AmbiguousRounding,
    #[error("interval comparison undecided at current precision")]
    AmbiguousComparison,
    #[error("precision ceiling of {0} bits reached")]
    PrecisionExhausted(u32),

    #[error("exponent {0} is not an odd prime >= 3")]
    InvalidExponent(u64),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("bad prime {0}")]
    BadPrime(u64),
    #[error("minimal polynomial data mismatch: {0}")]
    MinpolyMismatch(String),

    #[error("unit table parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("unit table declares degree {found}, expected {expected}")]
    WrongDegree { expected: usize, found: usize },
    #[error("unit table has {found} units, expected {expected}")]
    WrongCount { expected: usize, found: usize },
    #[error("zero field element")]
    ZeroElement,
    #[error("matrix is singular or its inverse could not be certified")]
    SingularOrUnverifiable,
    #[error("unit {0} does not have norm +-1")]
    NotAUnit(usize),
    #[error("units are multiplicatively dependent")]
    DependentUnits,

    #[error("lattice basis is rank deficient")]
    RankDeficient,
    #[error("reduction hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("exponent box of {0} points exceeds the configured ceiling")]
    BoxTooLarge(u128),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("stage `{stage}` failed: {msg}")]
    Stage { stage: String, msg: String },
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// True for the errors that a precision increase may cure.
    pub fn wants_more_precision(&self) -> bool {
        matches!(self, Error::AmbiguousRounding | Error::AmbiguousComparison)
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
