//! Birkhoff-James orthogonality and the acute/obtuse angle relations.
//!
//! `x` is orthogonal to `y` when `|x + t y| >= |x|` for every real `t`; acute
//! when this holds for `t >= 0`, obtuse for `t <= 0`. The decision procedures
//! here read these relations off the norming functionals of `x`: with
//! `(lo, hi)` the range of `f(y)` over the support set, `x` is orthogonal to
//! `y` iff `lo <= 0 <= hi`, acute iff `hi >= 0` and strictly acute iff `lo > 0`.
//! The `*_oracle` functions instead minimize `t -> |x + t y|` directly and are
//! kept independent of the support-set machinery so the two can be compared.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::golden_section;
use crate::space::{support_set, NormedSpace};
use crate::tolerance::TAU_ZERO;
use crate::vector::{axpy, check_dim};

/// Line-search accuracy of the oracles, in units of `t`.
pub const ORACLE_XTOL: f64 = 1e-10;
/// Iteration cap of the oracles' golden-section search.
pub const ORACLE_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AngleTag {
    StrictlyAcute,
    Orthogonal,
    StrictlyObtuse,
    /// `x = 0`: every relation holds vacuously.
    DegenerateLeft,
}

impl AngleTag {
    pub fn label(self) -> &'static str {
        match self {
            AngleTag::StrictlyAcute => "strictly acute",
            AngleTag::Orthogonal => "orthogonal",
            AngleTag::StrictlyObtuse => "strictly obtuse",
            AngleTag::DegenerateLeft => "degenerate (x = 0)",
        }
    }
}

/// Classification of the pair `(x, y)` with its witness bounds.
///
/// `min_bound`/`max_bound` are the extreme values of `f(y)` over the norming
/// functionals `f` of `x`. They are compared against `margin * |y|`, so the
/// margin is scale free.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleRelation {
    pub tag: AngleTag,
    pub min_bound: f64,
    pub max_bound: f64,
    pub y_norm: f64,
}

impl AngleRelation {
    /// `x` is at an acute angle to `y` (orthogonal or strictly acute).
    pub fn is_acute(&self) -> bool {
        matches!(
            self.tag,
            AngleTag::Orthogonal | AngleTag::StrictlyAcute | AngleTag::DegenerateLeft
        )
    }

    /// `x` is at an obtuse angle to `y` (orthogonal or strictly obtuse).
    pub fn is_obtuse(&self) -> bool {
        matches!(
            self.tag,
            AngleTag::Orthogonal | AngleTag::StrictlyObtuse | AngleTag::DegenerateLeft
        )
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self.tag, AngleTag::Orthogonal | AngleTag::DegenerateLeft)
    }

    /// Distance of 0 from `[min_bound, max_bound]`, relative to `|y|`.
    /// Orthogonality is decided by comparing this with the margin.
    pub fn orthogonality_gap(&self) -> f64 {
        if self.y_norm == 0.0 {
            return 0.0;
        }
        (self.min_bound.max(-self.max_bound)).max(0.0) / self.y_norm
    }

    /// `max_bound / |y|`. The pair is acute iff this is at least `-margin`.
    pub fn acute_statistic(&self) -> f64 {
        if self.y_norm == 0.0 {
            0.0
        } else {
            self.max_bound / self.y_norm
        }
    }
}

/// `(min, max)` of `f(y)` over the norming functionals of `x`; these are the
/// left and right derivatives of `t -> |x + t y|` at `t = 0`.
pub fn directional_bounds(space: &NormedSpace, x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    check_dim(space.dim(), y)?;
    let s = support_set(space, x)?;
    Ok(s.bounds(y))
}

pub fn classify_angle(
    space: &NormedSpace,
    x: &[f64],
    y: &[f64],
    margin: f64,
) -> Result<AngleRelation> {
    check_dim(space.dim(), x)?;
    check_dim(space.dim(), y)?;
    let y_norm = space.norm_unchecked(y);
    if space.norm_unchecked(x) <= TAU_ZERO {
        return Ok(AngleRelation {
            tag: AngleTag::DegenerateLeft,
            min_bound: 0.0,
            max_bound: 0.0,
            y_norm,
        });
    }
    let (lo, hi) = directional_bounds(space, x, y)?;
    let band = margin * y_norm;
    let tag = if lo > band {
        AngleTag::StrictlyAcute
    } else if hi < -band {
        AngleTag::StrictlyObtuse
    } else {
        AngleTag::Orthogonal
    };
    Ok(AngleRelation {
        tag,
        min_bound: lo,
        max_bound: hi,
        y_norm,
    })
}

/// Birkhoff-James orthogonality via norming functionals. `0` is orthogonal
/// to everything.
pub fn is_bj_orthogonal(space: &NormedSpace, x: &[f64], y: &[f64], margin: f64) -> Result<bool> {
    Ok(classify_angle(space, x, y, margin)?.is_orthogonal())
}

/// `x` and `y` are orthogonal to each other in both orders.
pub fn is_mutually_orthogonal(
    space: &NormedSpace,
    x: &[f64],
    y: &[f64],
    margin: f64,
) -> Result<bool> {
    Ok(is_bj_orthogonal(space, x, y, margin)? && is_bj_orthogonal(space, y, x, margin)?)
}

/// Minimizer and minimum of the convex map `t -> |x + t y|`.
///
/// Any minimizer lies in `[-L, L]` with `L = 2|x|/|y|`: beyond it
/// `|x + t y| >= |t||y| - |x| > |x|`.
pub fn oracle_min_over_line(space: &NormedSpace, x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    check_dim(space.dim(), x)?;
    check_dim(space.dim(), y)?;
    let yn = space.norm_unchecked(y);
    if yn <= TAU_ZERO {
        return Err(Error::ZeroDirection);
    }
    let xn = space.norm_unchecked(x);
    if xn <= TAU_ZERO {
        return Ok((0.0, xn));
    }
    Ok(line_search(space, x, xn, y, yn, -2.0, 2.0))
}

/// Golden-section search on the normalized pair `x/|x|`, `y/|y|` over
/// `t in [lo, hi]`, so `ORACLE_XTOL` is relative to the problem's scale.
/// Returns the minimizer and minimum for the original pair.
fn line_search(space: &NormedSpace, x: &[f64], xn: f64, y: &[f64], yn: f64, lo: f64, hi: f64) -> (f64, f64) {
    let xs: Vec<f64> = x.iter().map(|v| v / xn).collect();
    let ys: Vec<f64> = y.iter().map(|v| v / yn).collect();
    let phi = |t: f64| space.norm_unchecked(&axpy(&xs, t, &ys));
    let m = golden_section(phi, lo, hi, ORACLE_XTOL, ORACLE_MAX_ITER);
    (m.arg * xn / yn, m.value * xn)
}

/// Birkhoff-James orthogonality decided by direct line minimization.
pub fn is_bj_orthogonal_oracle(
    space: &NormedSpace,
    x: &[f64],
    y: &[f64],
    margin: f64,
) -> Result<bool> {
    check_dim(space.dim(), x)?;
    check_dim(space.dim(), y)?;
    let xn = space.norm_unchecked(x);
    if xn <= TAU_ZERO || space.norm_unchecked(y) <= TAU_ZERO {
        return Ok(true);
    }
    let (_, value) = oracle_min_over_line(space, x, y)?;
    Ok(value >= xn * (1.0 - margin))
}

/// Minimum of `t -> |x + t y|` over `t >= 0`.
pub fn oracle_min_over_ray(space: &NormedSpace, x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    check_dim(space.dim(), x)?;
    check_dim(space.dim(), y)?;
    let xn = space.norm_unchecked(x);
    if xn <= TAU_ZERO {
        return Err(Error::ZeroVector);
    }
    let yn = space.norm_unchecked(y);
    if yn <= TAU_ZERO {
        return Ok((0.0, xn));
    }
    Ok(line_search(space, x, xn, y, yn, 0.0, 2.0))
}

/// Acute angle `x ⊥+ y` decided by minimizing over the half-line `t >= 0`.
pub fn one_sided_acute_oracle(
    space: &NormedSpace,
    x: &[f64],
    y: &[f64],
    margin: f64,
) -> Result<bool> {
    let xn = space.norm(x)?;
    let (_, value) = oracle_min_over_ray(space, x, y)?;
    Ok(value >= xn * (1.0 - margin))
}
