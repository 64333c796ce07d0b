use thiserror::Error;

/// Errors raised by norm, operator and report computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GlsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("p = {p} is not admissible: {detail}")]
    Inadmissible { p: f64, detail: String },
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse spec: {0}")]
    Spec(String),
    #[error("degree insufficient: {0}")]
    DegreeInsufficient(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, GlsError>;

impl GlsError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        GlsError::InvalidParameter(msg.into())
    }

    pub fn divergent(msg: impl Into<String>) -> Self {
        GlsError::Divergent(msg.into())
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, GlsError::Divergent(_))
    }
}

impl From<std::io::Error> for GlsError {
    fn from(e: std::io::Error) -> Self {
        GlsError::Io(e.to_string())
    }
}
