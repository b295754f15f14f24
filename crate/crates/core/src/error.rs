use thiserror::Error;

/// Errors raised by the numerical kernels and the command-line layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the function (poles, negative radii, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Result not representable as a finite double.
    #[error("range error: {0}")]
    Range(String),

    /// Iterative method failed to converge; `best` is the last usable iterate.
    #[error("numeric error: {msg} (best iterate {best})")]
    Numeric { msg: String, best: f64 },

    /// Exactly singular matrix (pivot below 1e-300).
    #[error("singular matrix: pivot {pivot:e} at column {column}")]
    Singular { column: usize, pivot: f64 },

    /// Matrix is numerically singular relative to its norm. The spectral
    /// parameter it was built at sits on (or next to) a pole.
    #[error("near-pole: relative pivot {ratio:e} at parameter {param}")]
    NearPole { param: f64, ratio: f64 },

    /// Caller violated an API contract (e.g. asked for a finite-coupling
    /// quantity on an all-infinite chain).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Input that fails validation (bad chain layout, malformed config).
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures caused by the numbers rather than by the inputs'
    /// shape; the CLI maps these to exit code 2.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Range(_)
                | Error::Numeric { .. }
                | Error::Singular { .. }
                | Error::NearPole { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
