use std::path::PathBuf;

/// Failures of the command-line layer, split by exit code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Bad flags or arguments.
    #[error("{0}")]
    Usage(String),
    #[error("invalid surface spec: {0}")]
    Spec(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache {path}, line {line}: {message}")]
    Cache { path: PathBuf, line: usize, message: String },
    /// A count is needed beyond the desk-scale limit and no value was supplied.
    #[error("N_{d} over F_{p}^{d} needs q^2 = {q2} point evaluations; pass --deep or add an external count")]
    Policy { p: u64, d: u32, q2: u128 },
    /// A mathematical precondition failed (singular reduction, inconsistent data, ...).
    #[error("{0}")]
    Math(String),
}

impl Error {
    /// 1 for usage and input problems, 2 for mathematical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Math(_) => 2,
            _ => 1,
        }
    }
}

impl From<picard_core::Error> for Error {
    fn from(e: picard_core::Error) -> Self {
        match e {
            picard_core::Error::NotPrime(_)
            | picard_core::Error::EvenCharacteristic
            | picard_core::Error::ZeroDegree => Error::Usage(e.to_string()),
            other => Error::Math(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
