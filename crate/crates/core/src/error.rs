use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters for family `{family}`: {reason}")]
    InvalidParams { family: String, reason: String },

    /// `index` is the 1-based mode number.
    #[error("mode {index} has nonnegative real part")]
    NonnegativeRealPart { index: usize },

    #[error("spectrum has no modes")]
    EmptySpectrum,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("quadrature needs an exponential envelope for the analytic tail")]
    EnvelopeMissing,

    #[error("tail does not converge: {0}")]
    NonconvergentTail(String),

    #[error("failed to parse document: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::UnknownFamily(_) => "unknown_family",
            Error::InvalidParams { .. } => "invalid_params",
            Error::NonnegativeRealPart { .. } => "invariant_violation",
            Error::EmptySpectrum => "empty_spectrum",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Hypothesis(_) => "hypothesis",
            Error::EnvelopeMissing => "envelope_missing",
            Error::NonconvergentTail(_) => "nonconvergent_tail",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
