use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("inhomogeneous expression")]
    Inhomogeneous,
    #[error("component degrees differ: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("zero component in projective tuple")]
    ZeroComponent,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("configuration not covered: {0}")]
    Configuration(String),
    #[error("unsupported field extension needed: {0}")]
    UnsupportedField(String),
    #[error("not a Cremona map: {0}")]
    NotBirational(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
