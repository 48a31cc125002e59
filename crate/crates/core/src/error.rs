use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("family is empty")]
    EmptyFamily,
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
    #[error("sampling failed: {0}")]
    SamplingFailure(String),
    #[error("malformed family: {0}")]
    Parse(String),
}

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($fmt)+)));
        }
    };
}

pub(crate) use ensure;
