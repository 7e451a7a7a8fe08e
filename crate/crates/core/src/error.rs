use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} lies outside the unit interval [0, 1]")]
    OutOfRange(String),

    #[error("cannot parse {0:?} as an exact scalar")]
    Parse(String),

    #[error("incompatible shapes: {0}")]
    DimensionMismatch(String),

    #[error("empty input: {0}")]
    Empty(String),

    #[error("segment endpoints are not comparable")]
    NotComparable,

    #[error("matrix is not trapezoidal under the given permutations")]
    NotTrapezoidal,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
