//! Seeded sampling shared by the verification sweeps.
//!
//! Every sample index gets its own ChaCha stream derived from `(seed, index)`,
//! so a sweep can be split across any number of workers and still produce
//! bit-identical results.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::space::{support_set, NormedSpace};
use crate::vector::{axpy, dot};

/// Samples whose norm falls below this are redrawn.
pub const MIN_SAMPLE_NORM: f64 = 1e-3;

/// Upper edge of the exclusion band used when a support-functional decision
/// is compared against a line-minimization oracle. The oracle sees the
/// deficit `|x| - min |x + t y|`, which is quadratic (or worse) in the
/// directional derivative, so it cannot resolve derivatives much below this.
pub const ORACLE_RESOLUTION: f64 = 1e-3;

/// Deterministic generator for sample `index` of a sweep seeded with `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample(StandardNormal)).collect()
}

/// Standard normal coordinates, redrawn until the norm is at least [`MIN_SAMPLE_NORM`].
pub fn random_vector<R: Rng>(rng: &mut R, space: &NormedSpace) -> Vec<f64> {
    loop {
        let v = gaussian_vector(rng, space.dim());
        if space.norm_unchecked(&v) >= MIN_SAMPLE_NORM {
            return v;
        }
    }
}

/// A nonzero `y` with `x ⊥ y`: a random convex combination `g` of the extreme
/// norming functionals of `x` is drawn and a random vector is projected onto
/// `ker g` along `x`.
pub fn orthogonal_companion<R: Rng>(rng: &mut R, space: &NormedSpace, x: &[f64]) -> Vec<f64> {
    let s = support_set(space, x).expect("companion of a nonzero sample");
    let weights: Vec<f64> = s.extremes().iter().map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = weights.iter().sum();
    let mut g = vec![0.0; x.len()];
    for (f, w) in s.extremes().iter().zip(&weights) {
        for (gi, fi) in g.iter_mut().zip(f.coords()) {
            *gi += fi * w / total;
        }
    }
    let gx = dot(&g, x);
    loop {
        let v = gaussian_vector(rng, space.dim());
        let y = axpy(&v, -dot(&g, &v) / gx, x);
        if space.norm_unchecked(&y) >= MIN_SAMPLE_NORM {
            return y;
        }
    }
}

/// `true` when `stat` lies in `[lo, hi]`.
pub fn in_band(stat: f64, lo: f64, hi: f64) -> bool {
    stat >= lo && stat <= hi
}

/// Exclusion test for an orthogonality gap against `margin`: gaps in
/// `[margin / 10, upper]` are too close to the decision threshold to adjudicate.
pub fn orthogonality_near_boundary(gap: f64, margin: f64, upper: f64) -> bool {
    in_band(gap, margin / 10.0, upper)
}

/// Exclusion test for the acute statistic (acute iff `stat >= -margin`).
pub fn acute_near_boundary(stat: f64, margin: f64, upper: f64) -> bool {
    in_band(-stat, margin / 10.0, upper)
}
