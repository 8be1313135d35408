use thiserror::Error;

/// Errors raised by the soliton construction and its verification routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("eigenvalue must lie in the upper half plane (nu = {nu})")]
    NotUpperHalfPlane { nu: f64 },

    #[error("degenerate eigenvalue: real part is zero")]
    DegenerateEigenvalue,

    #[error("non-finite input: {what}")]
    NonFinite { what: &'static str },

    #[error("singular point: |gamma| = {gamma:e} below tolerance {tolerance:e}")]
    SingularPoint { gamma: f64, tolerance: f64 },

    #[error("field singularity: |tau| = {tau:e} below tolerance {tolerance:e}")]
    FieldSingularity { tau: f64, tolerance: f64 },

    #[error("{what} has imaginary residue {imag:e} above tolerance")]
    NotReal { what: &'static str, imag: f64 },

    #[error("transfer matrix determinant underflows (log|det T| = {log_det})")]
    DeterminantUnderflow { log_det: f64 },

    #[error("phase unwrapping failed at x = {x}: step {step:e} could not bound the jump")]
    BranchTracking { x: f64, step: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("step count too small: error estimate {estimate:e} exceeds {tolerance:e}")]
    StepCountTooSmall { estimate: f64, tolerance: f64 },

    #[error("spectral parameter {0} is not admissible: {1}")]
    BadSpectralParameter(String, &'static str),

    #[error("potential cannot be continued off the real axis")]
    ContourUnsupported,

    #[error("too many excluded nodes: {excluded} of {total}")]
    GridUnusable { excluded: usize, total: usize },

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
