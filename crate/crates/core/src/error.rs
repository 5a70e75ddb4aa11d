use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty grid")]
    EmptyGrid,

    #[error("grid must be sorted ascending and strictly positive")]
    BadGrid,

    #[error("negative argument {0} where a nonnegative value is required")]
    Negative(f64),

    #[error("outside space: modular stays above 1 for every scale in [{lo:e}, {hi:e}]")]
    OutsideSpace { lo: f64, hi: f64 },

    #[error("densities must live on the same measure space")]
    SpaceMismatch,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |A - A*| entry = {0:e}")]
    NotHermitian(f64),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("negative spectrum: eigenvalue {0}")]
    NegativeSpectrum(f64),

    #[error("step values must be strictly decreasing and nonnegative, lengths positive")]
    BadSteps,

    #[error("time step produced a nonpositive density; halve dt (current dt = {0})")]
    StepSize(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
