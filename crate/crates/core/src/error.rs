use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the simulator, surrogate, or optimization loop.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..={max}", max = crate::statevector::MAX_QUBITS)]
    QubitCount(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("basis index {index} out of range for {dim} basis states")]
    BasisIndex { index: usize, dim: usize },

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("shot count must be at least 1")]
    NoShots,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("hamiltonian has no terms")]
    EmptyHamiltonian,

    #[error("continuous variable {index} = {value} outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },

    #[error("unsupported Matérn smoothness nu = {0} (expected 0.5, 1.5 or 2.5)")]
    UnsupportedNu(f64),

    #[error("invalid kernel configuration: {0}")]
    KernelConfig(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("Cholesky factorization failed even with jitter {jitter:e}")]
    Cholesky { jitter: f64 },

    #[error("need at least one training sample")]
    NoSamples,

    #[error("angle count {found} does not match variant {variant} with depth {depth} (expected {expected})")]
    AngleCount {
        variant: String,
        depth: usize,
        expected: usize,
        found: usize,
    },

    #[error("unknown problem id `{0}`")]
    UnknownProblem(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("run aborted at iteration {iteration}: {source}")]
    RunAborted {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
