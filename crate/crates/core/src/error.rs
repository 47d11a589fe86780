use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported Cartan type: {0}")]
    UnsupportedType(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("embedded data error: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
