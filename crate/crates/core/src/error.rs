use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {0}")]
    InvalidDimension(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("not a valid density matrix: {0}")]
    NotPhysical(String),

    #[error("invalid qubit list: {0}")]
    InvalidQubits(String),

    #[error("gate {gate} takes {expected} qubit(s), got {found}")]
    Arity {
        gate: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{n} qubits exceeds the dense capacity of {max}")]
    Capacity { n: usize, max: usize },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("partial trace needs at least one kept qubit")]
    EmptyKeepSet,

    #[error("noise grid is empty")]
    EmptyGrid,

    #[error("no T-cost entry for {0}; supply an explicit cost")]
    MissingTCost(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
