//! Search for two-dimensional Euclidean sections.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::smooth::parallelogram_defect;
use crate::error::{Error, Result};
use crate::sampling::{gaussian_vector, stream};
use crate::space::NormedSpace;
use crate::vector::{axpy, check_dim, dot, scale};

/// Candidates with a normalized Gram determinant at or below this are rejected.
pub const MIN_GRAM: f64 = 1e-6;
/// Default tolerance on the normalized parallelogram defect.
pub const SECTION_TOL: f64 = 1e-6;

/// The plane spanned by two vectors of an ambient space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionCandidate {
    u: Vec<f64>,
    v: Vec<f64>,
}

impl SectionCandidate {
    pub fn new(u: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        check_dim(u.len(), &v)?;
        let (uu, vv, uv) = (dot(&u, &u), dot(&v, &v), dot(&u, &v));
        let gram = if uu == 0.0 || vv == 0.0 { 0.0 } else { (uu * vv - uv * uv) / (uu * vv) };
        if gram.is_nan() || gram <= MIN_GRAM {
            return Err(Error::DegenerateSection { gram });
        }
        Ok(Self { u, v })
    }

    pub fn basis(&self) -> (&[f64], &[f64]) {
        (&self.u, &self.v)
    }

    pub fn point(&self, a: f64, b: f64) -> Vec<f64> {
        axpy(&scale(a, &self.u), b, &self.v)
    }
}

/// Every coordinate plane `span{e_i, e_j}` followed by seeded random planes,
/// `total` candidates in all (or just the coordinate planes if there are more
/// of those).
pub fn section_candidates(dim: usize, total: usize, seed: u64) -> Vec<SectionCandidate> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let mut u = vec![0.0; dim];
            let mut v = vec![0.0; dim];
            u[i] = 1.0;
            v[j] = 1.0;
            out.push(SectionCandidate { u, v });
        }
    }
    let mut k = 0u64;
    while out.len() < total {
        let mut rng = stream(seed, k);
        k += 1;
        if let Ok(c) = SectionCandidate::new(gaussian_vector(&mut rng, dim), gaussian_vector(&mut rng, dim)) {
            out.push(c);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectionReport {
    /// Indices of the candidates that passed every parallelogram test.
    pub flagged: Vec<usize>,
    /// Largest normalized defect seen on each candidate.
    pub max_defects: Vec<f64>,
    pub candidates: usize,
    pub pair_samples: usize,
    pub tol: f64,
    pub seed: u64,
}

/// `|defect(P, Q)| / (|P|^2 + |Q|^2)` for the section points `P = a u + b v`
/// and `Q = c u + d v`.
fn normalized_defect(space: &NormedSpace, c: &SectionCandidate, coeffs: [f64; 4]) -> Result<f64> {
    let p = c.point(coeffs[0], coeffs[1]);
    let q = c.point(coeffs[2], coeffs[3]);
    let s = space.norm_unchecked(&p).powi(2) + space.norm_unchecked(&q).powi(2);
    if s == 0.0 {
        return Ok(0.0);
    }
    Ok(parallelogram_defect(space, &p, &q)?.abs() / s)
}

/// Flags the candidates on which the parallelogram law holds within `tol` for
/// `pair_samples` random coefficient quadruples. Candidate `i` draws its
/// coefficients from its own stream, so the samples for a smaller
/// `pair_samples` are a prefix of those for a larger one.
pub fn euclidean_section_search(
    space: &NormedSpace,
    candidates: &[SectionCandidate],
    pair_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<SectionReport> {
    for c in candidates {
        check_dim(space.dim(), &c.u)?;
    }
    let max_defects = candidates
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut rng = stream(seed, i as u64);
            let mut worst = 0.0_f64;
            for _ in 0..pair_samples {
                let coeffs: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
                worst = worst.max(normalized_defect(space, c, coeffs)?);
            }
            Ok(worst)
        })
        .collect::<Result<Vec<f64>>>()?;
    let flagged = max_defects.iter().enumerate().filter(|(_, d)| **d <= tol).map(|(i, _)| i).collect();
    Ok(SectionReport {
        flagged,
        max_defects,
        candidates: candidates.len(),
        pair_samples,
        tol,
        seed,
    })
}
