use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("cannot invert {0}")]
    NotInvertible(String),
    #[error("size guard exceeded: need about {needed}, limit {limit}")]
    SizeGuard { needed: u128, limit: u64 },
    #[error("expected a homogeneous input")]
    NotHomogeneous,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: u32, right: u32 },
    #[error("assignment is missing variable {0}")]
    MissingAssignment(u32),
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("structure constants fail associativity at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("alphas must be pairwise distinct and nonzero")]
    BadAlphas,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
