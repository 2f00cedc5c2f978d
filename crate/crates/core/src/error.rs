use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("extension overflow: tower depth limit {limit} exceeded")]
    ExtensionOverflow { limit: usize },
    #[error("elements live in incompatible towers")]
    IncompatibleTowers,
    #[error("polynomial is not irreducible over its base field")]
    NotIrreducible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("undecided at truncation order {trunc}")]
    Undecided { trunc: String },
    #[error("{value} is not a root of f")]
    NotARoot { value: String },
    #[error("needs xi shift at pi-root with prefix [{prefix}] and order {j0}: {reason}")]
    NeedsXiShift { prefix: String, j0: String, reason: String },
    #[error("no admissible xi found in {trials} trials")]
    XiTrialsExhausted { trials: usize },
    #[error("resultant vanishes: the polynomials share a component")]
    ResultantZero,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid corner data: {0}")]
    InvalidCorner(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::HypothesisNotMet(_) | Error::InvalidCorner(_) => 2,
            Error::NeedsXiShift { .. } | Error::XiTrialsExhausted { .. } => 3,
            Error::Undecided { .. } => 4,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
