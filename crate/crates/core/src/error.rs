use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SmtError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("jet order {have} is below the required {need}")]
    InsufficientOrder { need: usize, have: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("binomial ({n} choose {k}) is not defined under the {mode} convention")]
    UnsupportedBinomial { n: i64, k: i64, mode: &'static str },
    #[error("could not bracket zero {i} of j_(k+1/2) for k = {k}")]
    Bracketing { k: usize, i: usize },
    #[error("ill-posed configuration: {0}")]
    IllPosed(String),
}

pub type Result<T> = std::result::Result<T, SmtError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(SmtError::InvalidArgument(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(SmtError::Domain(msg.into()))
}
