use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit code
/// through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("{0} is not a prime modulus in [2, 2^31)")]
    NotPrime(u64),

    #[error("inhomogeneous polynomial: {0}")]
    Inhomogeneous(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("vector outside the ambient span: {0}")]
    OutsideSpan(String),

    #[error("guard exceeded: {what} is {actual}, limit {limit}")]
    Guard {
        what: String,
        limit: u128,
        actual: u128,
    },

    #[error("the unit ideal is not allowed here")]
    UnitIdeal,

    #[error("ideal is not squarefree")]
    NotSquarefree,

    #[error("ideal has a generator of degree < 2: {0}")]
    LowDegreeGenerator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a retract: {0}")]
    NotARetract(String),

    #[error("algorithm contract violated: {0}")]
    AlgorithmContract(String),

    #[error("infeasible basis: {0}")]
    InfeasibleBasis(String),

    #[error("invalid complex: {}", .0.join("; "))]
    InvalidComplex(Vec<String>),

    #[error("not a subfan: {0}")]
    NotASubfan(String),

    #[error("no geometry attached to the fan")]
    NoGeometry,

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotARetract(_) => 2,
            Error::AlgorithmContract(_) | Error::InfeasibleBasis(_) => 3,
            Error::Guard { .. } => 4,
            _ => 1,
        }
    }

    pub(crate) fn guard(what: impl Into<String>, limit: u128, actual: u128) -> Self {
        Error::Guard {
            what: what.into(),
            limit,
            actual,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
