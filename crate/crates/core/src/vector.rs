//! Coordinate helpers for vectors and functionals stored as plain `f64` slices.

use crate::error::{Error, Result};

pub(crate) fn check_dim(expected: usize, v: &[f64]) -> Result<()> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            found: v.len(),
        })
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn euclidean_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |acc, x| acc.hypot(*x))
}

pub fn scale(c: f64, v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| c * x).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `x + lambda * y`
pub fn axpy(x: &[f64], lambda: f64, y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a + lambda * b).collect()
}

/// `(cos theta, sin theta)`
pub fn circle_point(theta: f64) -> [f64; 2] {
    let (s, c) = theta.sin_cos();
    [c, s]
}

/// Polar angle in `[0, 2*pi)`.
pub fn polar_angle(v: &[f64]) -> f64 {
    let a = v[1].atan2(v[0]);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polar_angle_range() {
        assert_eq!(polar_angle(&[1.0, 0.0]), 0.0);
        assert!((polar_angle(&[0.0, -1.0]) - 1.5 * PI).abs() < 1e-15);
        assert!((polar_angle(&[-1.0, 0.0]) - PI).abs() < 1e-15);
    }

    #[test]
    fn euclidean_norm_avoids_overflow() {
        assert_eq!(euclidean_norm(&[3.0, 4.0]), 5.0);
        assert!(euclidean_norm(&[1e300, 1e300]).is_finite());
    }
}
