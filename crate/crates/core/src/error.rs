use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {requested} exceeds table maximum {max}")]
    DegreeOutOfRange { requested: usize, max: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("unknown sum {0:?}")]
    UnknownSum(String),
    #[error("identity {id} needs parameter {name:?}")]
    MissingParam { id: String, name: String },
    #[error("parameter {name:?} must be an integer, got {value}")]
    NotInteger { name: String, value: String },
    #[error("series degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
