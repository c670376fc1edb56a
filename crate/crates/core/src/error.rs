use thiserror::Error;

/// Errors raised by the algebra, operator and desingularization routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}: input must be non-zero")]
    ZeroInput(&'static str),
    #[error("{0}: polynomial must have degree at least 1")]
    ConstantPolynomial(&'static str),
    #[error("operator coefficients are not polynomials")]
    NotPolynomial,
    #[error("trailing coefficient is zero")]
    ZeroTrailingCoefficient,
    #[error("{point} is not a {kind}-singularity")]
    NotASingularity { point: String, kind: &'static str },
    #[error("unsupported algebraic point: roots of {0}")]
    UnsupportedAlgebraicPoint(String),
    #[error("rational root search too large for {0}")]
    RootSearchTooLarge(String),
    #[error("input functions are linearly dependent")]
    LinearlyDependent,
    #[error("truncation order {given} below required {required}")]
    TruncationTooSmall { given: usize, required: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("symbol '{symbol}' at {pos} does not belong to the {ring} ring")]
    WrongRing { pos: usize, symbol: char, ring: &'static str },
    #[error("window has {got} values, operator needs {want}")]
    WindowLength { got: usize, want: usize },
    #[error("{0}")]
    Inconsistent(String),
    #[error("invalid operator encoding: {0}")]
    Encoding(String),
}

pub type Result<T> = std::result::Result<T, Error>;
