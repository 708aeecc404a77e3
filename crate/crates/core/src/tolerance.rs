//! Numerical tolerances shared across the crate.

/// A vector whose norm does not exceed this is treated as zero.
pub const TAU_ZERO: f64 = 1e-12;
/// Certification tolerance for support functionals: `|f(x) - |x|| <= TAU_SUP * |x|`.
pub const TAU_SUP: f64 = 1e-9;
/// Relative tolerance under which two part norms of an l-infinity sum count as tied.
pub const TAU_TIE: f64 = 1e-9;
/// Default decision margin for orthogonality classification.
pub const DEFAULT_MARGIN: f64 = 1e-9;
/// Tolerance on `1/p + 1/q - 1` for a Day-James plane to be flagged as a Radon candidate.
pub const CONJUGATE_TOL: f64 = 1e-12;
