use thiserror::Error;

use crate::exactmath::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error(
        "intersection matrix is not negative definite: leading minor of order {order} is {value}"
    )]
    NotNegativeDefinite { order: usize, value: Rational },

    #[error("vector {0:?} does not lie in the cone")]
    NotInCone(Vec<i64>),

    #[error("vector {0:?} does not lie in the interior of the cone")]
    NotInterior(Vec<i64>),

    #[error("ideal is not primary to the maximal ideal: {0}")]
    NotMPrimary(String),

    #[error("{0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DimensionMismatch(_) | Error::Malformed(_) | Error::Json(_) | Error::Io(_) => 2,
            Error::Unsupported(_) => 4,
            Error::Singular
            | Error::NotSymmetric
            | Error::NotNegativeDefinite { .. }
            | Error::NotInCone(_)
            | Error::NotInterior(_)
            | Error::NotMPrimary(_)
            | Error::Domain(_) => 3,
        }
    }
}
