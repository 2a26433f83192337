use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={max}", max = crate::statevector::MAX_QUBITS)]
    QubitCount(usize),
    #[error("qubit index {index} out of range for a {n_qubits}-qubit register")]
    QubitOutOfRange { index: usize, n_qubits: usize },
    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),
    #[error("qubit {0} used more than once in a single operation")]
    OverlappingQubits(usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("measurement outcome has probability {0:.3e}; treated as impossible")]
    ImpossibleOutcome(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate basis: overlap matrix is not positive definite ({0})")]
    DegenerateBasis(String),
    #[error("plan is inconsistent with the linear combination: {0}")]
    InconsistentPlan(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
