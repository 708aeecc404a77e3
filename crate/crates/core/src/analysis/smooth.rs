//! Smoothness probe and parallelogram defect.

use serde::Serialize;

use crate::error::Result;
use crate::sampling::{gaussian_vector, random_vector, stream};
use crate::space::{support_set, NormedSpace};
use crate::vector::{axpy, check_dim, euclidean_norm, scale};

/// Step of the one-sided difference quotients.
pub const PROBE_STEP: f64 = 1e-9;
/// Largest left/right quotient gap still counted as smooth.
pub const PROBE_GAP: f64 = 1e-4;
/// Random directions probed at each sampled point, besides the axis and diagonal ones.
const RANDOM_DIRECTIONS: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub worst_gap: f64,
    pub worst_point: Vec<f64>,
    pub worst_direction: Vec<f64>,
    /// Probed points whose support set has more than one extreme functional.
    pub non_singleton: usize,
    pub points: usize,
    pub seed: u64,
}

/// `e_i`, and `e_i ± e_j` for `i < j`, each scaled to Euclidean length 1.
fn structured_directions(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        out.push(e);
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..dim {
        for j in i + 1..dim {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; dim];
                e[i] = h;
                e[j] = s * h;
                out.push(e);
            }
        }
    }
    out
}

/// `(right - left)` one-sided difference quotient gap of the norm at `x` along `d`.
pub fn quotient_gap(space: &NormedSpace, x: &[f64], d: &[f64], h: f64) -> f64 {
    let n0 = space.norm_unchecked(x);
    let right = (space.norm_unchecked(&axpy(x, h, d)) - n0) / h;
    let left = (n0 - space.norm_unchecked(&axpy(x, -h, d))) / h;
    right - left
}

/// Probes the norm at every coordinate-axis and diagonal unit point plus
/// `samples` random unit points. At each point the left and right difference
/// quotients are compared along the axis and diagonal directions and a few
/// random ones. The space is reported smooth iff every gap is at most
/// [`PROBE_GAP`] and every support set is a singleton.
pub fn smoothness_probe(space: &NormedSpace, samples: usize, seed: u64) -> SmoothnessReport {
    let dim = space.dim();
    let structured = structured_directions(dim);
    let mut points: Vec<Vec<f64>> = Vec::with_capacity(structured.len() * 2 + samples);
    for d in &structured {
        points.push(d.clone());
        points.push(scale(-1.0, d));
    }
    for i in 0..samples {
        points.push(random_vector(&mut stream(seed, i as u64), space));
    }

    let mut report = SmoothnessReport {
        smooth: true,
        worst_gap: 0.0,
        worst_point: Vec::new(),
        worst_direction: Vec::new(),
        non_singleton: 0,
        points: points.len(),
        seed,
    };
    for (k, p) in points.iter().enumerate() {
        let x = scale(1.0 / space.norm_unchecked(p), p);
        match support_set(space, &x) {
            Ok(s) if s.is_singleton() => {}
            _ => report.non_singleton += 1,
        }
        let mut rng = stream(seed ^ 0x5eed, k as u64);
        let mut dirs = structured.clone();
        for _ in 0..RANDOM_DIRECTIONS {
            let g = gaussian_vector(&mut rng, dim);
            let n = euclidean_norm(&g);
            if n > 0.0 {
                dirs.push(scale(1.0 / n, &g));
            }
        }
        for d in dirs {
            let gap = quotient_gap(space, &x, &d, PROBE_STEP);
            if gap > report.worst_gap || report.worst_point.is_empty() {
                report.worst_gap = gap;
                report.worst_point = x.clone();
                report.worst_direction = d;
            }
        }
    }
    report.smooth = report.worst_gap <= PROBE_GAP && report.non_singleton == 0;
    report
}

/// `|u + v|^2 + |u - v|^2 - 2|u|^2 - 2|v|^2`, zero for all pairs exactly in
/// inner-product spaces.
pub fn parallelogram_defect(space: &NormedSpace, u: &[f64], v: &[f64]) -> Result<f64> {
    check_dim(space.dim(), u)?;
    check_dim(space.dim(), v)?;
    let n = |w: &[f64]| space.norm_unchecked(w).powi(2);
    Ok(n(&axpy(u, 1.0, v)) + n(&axpy(u, -1.0, v)) - 2.0 * n(u) - 2.0 * n(v))
}
