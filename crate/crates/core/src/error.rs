use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("two_j must be at least 1 (a dichotomic parity needs dimension >= 2)")]
    ZeroSpin,
    #[error("matrix must be square and non-empty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("measurability b = {0} lies outside [0, 1]")]
    MeasurabilityOutOfRange(f64),
    #[error("{0}")]
    NoFiniteWidth(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(
        "integer spin (two_j = {0}) has no default partition: m = 0 must be assigned explicitly"
    )]
    IntegerSpinPartition(u32),
    #[error("degenerate preparation: outcome {sign} has zero probability")]
    DegeneratePreparation { sign: i8 },
    #[error("outcome probability {probability:e} at theta = {theta} is too small for the finite-difference route")]
    NearSingular { theta: f64, probability: f64 },
    #[error("inconsistent correlation at theta = {theta}: C = {value}, C' = {first} with 1 - C^2 <= 1e-10")]
    InconsistentState { theta: f64, value: f64, first: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
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
