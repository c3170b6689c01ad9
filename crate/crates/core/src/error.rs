use thiserror::Error;

/// Errors raised by the exact-arithmetic and classification layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("input is not in block normal form")]
    NotNormalForm,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("cocycle mismatch: bicharacters differ")]
    CocycleMismatch,
    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("phase unwrapping failed: step of {step:.6} rad at sample {index}")]
    UnwrapFailure { index: usize, step: f64 },
    #[error("snap failure: {value:.9} is {distance:.3e} turns from the nearest admissible value")]
    SnapFailure { value: f64, distance: f64 },
    #[error("orbit search exceeded the cap of {0} states")]
    CapExceeded(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
