use thiserror::Error;

/// Errors raised by transforms, the verification harness and file I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("matrix determinant is {det}, expected 1 within 1e-12")]
    Determinant { det: f64 },

    #[error("form {form} cannot be used: {reason}")]
    IncompatibleForm { form: &'static str, reason: &'static str },

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(&'static str),

    #[error("unsupported scaling d = {0} for the b = 0 branch")]
    UnsupportedScaling(f64),

    #[error("odd length {0}, an even number of samples is required")]
    OddLength(usize),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("carrier {fc} is at or above the Nyquist frequency {nyquist}")]
    CarrierAboveNyquist { fc: f64, nyquist: f64 },

    #[error("signal has zero energy")]
    ZeroEnergy,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by malformed input files.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Io(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
