use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid exponent {value}: exponents must be finite and greater than 1")]
    InvalidExponent { value: f64 },
    #[error("an l-infinity sum needs at least two parts, got {0}")]
    EmptySum(usize),
    #[error("dimension must be at least 1, got {0}")]
    BadDimension(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("operation requires a nonzero vector")]
    ZeroVector,
    #[error("line direction must be nonzero")]
    ZeroDirection,
    #[error("operation requires a two-dimensional space, got dimension {0}")]
    NotAPlane(usize),
    #[error("orthogonality residual does not change sign on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },
    #[error("support set at the given point is not a singleton ({0} extremes)")]
    NotSmooth(usize),
    #[error("angle {0} lies outside [0, pi/2]")]
    AngleOutOfRange(f64),
    #[error("target plane is not a smooth Radon plane: {0}")]
    NotRadonPlane(String),
    #[error("grid size {got} is below the minimum {min}")]
    GridTooCoarse { got: usize, min: usize },
    #[error("eta table is not strictly increasing at node {index}")]
    MonotonicityViolation { index: usize },
    #[error("eta table invariant violated: {0}")]
    InvalidEtaTable(String),
    #[error("inverse did not converge (residual {residual:e})")]
    NonConvergence { residual: f64 },
    #[error("an l-infinity sum of maps needs at least two parts, got {0}")]
    EmptyParts(usize),
    #[error("section basis is degenerate (normalized Gram determinant {gram:e})")]
    DegenerateSection { gram: f64 },
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
