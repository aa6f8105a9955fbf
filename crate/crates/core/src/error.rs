use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("Bernoulli index {index} exceeds the cap {cap}")]
    BernoulliCap { index: u32, cap: u32 },
    #[error("malformed generator: {0}")]
    MalformedGenerator(String),
    #[error("unsupported term shape: {0}")]
    UnsupportedShape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("divergent value: {0}")]
    Divergent(String),
    #[error("outside the evaluation domain: {0}")]
    Domain(String),
    #[error("requested accuracy not reached: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
