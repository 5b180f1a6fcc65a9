use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown space `{0}`")]
    UnknownSpace(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("model does not satisfy its preset: {0}")]
    InvalidPreset(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quotient did not stabilize: {0}")]
    NotStabilized(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
