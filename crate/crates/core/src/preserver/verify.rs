//! Sampling certificate for a [`PreserverMap`].

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::PreserverMap;
use crate::error::Result;
use crate::orthogonality::{classify_angle, AngleRelation};
use crate::sampling::{
    acute_near_boundary, gaussian_vector, orthogonal_companion, orthogonality_near_boundary, random_vector, stream,
};
use crate::space::NormedSpace;
use crate::vector::{axpy, euclidean_norm, scale, sub};

/// Pass thresholds of [`verify_preserver`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyThresholds {
    pub norm: f64,
    pub homogeneity: f64,
    pub inverse: f64,
}

impl Default for VerifyThresholds {
    fn default() -> Self {
        Self { norm: 1e-9, homogeneity: 1e-12, inverse: 1e-8 }
    }
}

/// Relative step of the perturbations used for the continuity modulus.
const CONTINUITY_STEP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub samples: usize,
    /// Orthogonality decisions that differ between a pair and its image,
    /// in either direction, plus table nodes that fail the orthogonality audit.
    pub disagreements: usize,
    pub boundary_excluded: usize,
    pub max_norm_error: f64,
    pub max_homog_error: f64,
    pub continuity_modulus: f64,
    pub seed: u64,
    pub pass: bool,
    pub acute_violations: usize,
    pub node_disagreements: usize,
    /// Compared pairs that were orthogonal on the domain side.
    pub orthogonal_pairs: usize,
    pub max_inverse_error: f64,
    pub margin: f64,
    pub map: String,
}

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    disagreements: usize,
    excluded: usize,
    acute_violations: usize,
    orthogonal_pairs: usize,
    norm: f64,
    homog: f64,
    inverse: f64,
    modulus: f64,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.disagreements += o.disagreements;
        self.excluded += o.excluded;
        self.acute_violations += o.acute_violations;
        self.orthogonal_pairs += o.orthogonal_pairs;
        self.norm = self.norm.max(o.norm);
        self.homog = self.homog.max(o.homog);
        self.inverse = self.inverse.max(o.inverse);
        self.modulus = self.modulus.max(o.modulus);
        self
    }
}

/// Compares the relation of `(x, y)` in `a` with that of `(u, v)` in `b`.
#[allow(clippy::too_many_arguments)]
fn compare_pair(t: &mut Tally, a: &NormedSpace, x: &[f64], y: &[f64], b: &NormedSpace, u: &[f64], v: &[f64], margin: f64) -> Result<()> {
    let r = classify_angle(a, x, y, margin)?;
    let s = classify_angle(b, u, v, margin)?;
    let upper = 10.0 * margin;
    let near = |r: &AngleRelation| orthogonality_near_boundary(r.orthogonality_gap(), margin, upper);
    if near(&r) || near(&s) {
        t.excluded += 1;
    } else {
        if r.is_orthogonal() {
            t.orthogonal_pairs += 1;
        }
        if r.is_orthogonal() != s.is_orthogonal() {
            t.disagreements += 1;
        }
    }
    // Acute and obtuse agreement; obtuse is acute against -y.
    let acute_near = |r: &AngleRelation| {
        acute_near_boundary(r.acute_statistic(), margin, upper)
            || acute_near_boundary(-r.min_bound / r.y_norm.max(f64::MIN_POSITIVE), margin, upper)
    };
    if !acute_near(&r) && !acute_near(&s) && (r.is_acute() != s.is_acute() || r.is_obtuse() != s.is_obtuse()) {
        t.acute_violations += 1;
    }
    Ok(())
}

fn sample(map: &PreserverMap, margin: f64, seed: u64, index: u64) -> Tally {
    let mut t = Tally::default();
    if run_sample(&mut t, map, margin, seed, index).is_err() {
        t.disagreements += 1;
    }
    t
}

fn run_sample(t: &mut Tally, map: &PreserverMap, margin: f64, seed: u64, index: u64) -> Result<()> {
    let src = map.source();
    let dst = map.target();
    let mut rng = stream(seed, index);

    let x = random_vector(&mut rng, src);
    let y = random_vector(&mut rng, src);
    let y_orth = orthogonal_companion(&mut rng, src, &x);
    let tx = map.apply(&x)?;
    for y in [&y, &y_orth] {
        let ty = map.apply(y)?;
        compare_pair(t, src, &x, y, dst, &tx, &ty, margin)?;
    }

    // Reverse direction: pairs drawn in the target, pulled back.
    let u = random_vector(&mut rng, dst);
    let v = random_vector(&mut rng, dst);
    let v_orth = orthogonal_companion(&mut rng, dst, &u);
    let iu = map.apply_inverse(&u)?;
    for v in [&v, &v_orth] {
        let iv = map.apply_inverse(v)?;
        compare_pair(t, dst, &u, v, src, &iu, &iv, margin)?;
    }

    let nx = src.norm_unchecked(&x);
    t.norm = t.norm.max((dst.norm_unchecked(&tx) - nx).abs() / nx);

    let c = {
        let mag = (rng.random_range(-3.0..3.0_f64)).exp();
        if rng.random::<bool>() { mag } else { -mag }
    };
    let tcx = map.apply(&scale(c, &x))?;
    let homog = euclidean_norm(&sub(&tcx, &scale(c, &tx))) / (c.abs() * euclidean_norm(&tx));
    t.homog = t.homog.max(homog);

    let back = map.apply_inverse(&tx)?;
    t.inverse = t.inverse.max(euclidean_norm(&sub(&back, &x)) / euclidean_norm(&x));
    let fwd = map.apply(&iu)?;
    t.inverse = t.inverse.max(euclidean_norm(&sub(&fwd, &u)) / euclidean_norm(&u));

    let d = gaussian_vector(&mut rng, src.dim());
    let step = CONTINUITY_STEP * euclidean_norm(&x) / euclidean_norm(&d).max(f64::MIN_POSITIVE);
    let xp = axpy(&x, step, &d);
    let dx = euclidean_norm(&sub(&xp, &x));
    if dx > 0.0 {
        let txp = map.apply(&xp)?;
        t.modulus = t.modulus.max(euclidean_norm(&sub(&txp, &tx)) / dx);
    }
    Ok(())
}

/// Nodes of every `eta` table in the map whose orthogonality or monotonicity fails.
fn audit_nodes(map: &PreserverMap, margin: f64) -> usize {
    map.eta_tables()
        .iter()
        .map(|table| table.node_failures(margin).map(|v| v.len()).unwrap_or(table.grid().len()))
        .sum()
}

/// Checks the preserver property of `map` on `n_samples` seeded samples.
///
/// Each sample contributes a random pair and a constructed orthogonal pair in
/// the source, mapped forward, and the same in the target, mapped back. Pairs
/// whose orthogonality gap lies in `[margin / 10, 10 margin]` on either side
/// are counted in `boundary_excluded` and not compared. Sample `i` uses its
/// own random stream, so the report does not depend on thread count.
pub fn verify_preserver(map: &PreserverMap, n_samples: usize, margin: f64, seed: u64) -> VerificationReport {
    verify_preserver_with(map, n_samples, margin, seed, VerifyThresholds::default())
}

pub fn verify_preserver_with(
    map: &PreserverMap,
    n_samples: usize,
    margin: f64,
    seed: u64,
    limits: VerifyThresholds,
) -> VerificationReport {
    let tallies: Vec<Tally> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| sample(map, margin, seed, i))
        .collect();
    let t = tallies.into_iter().fold(Tally::default(), Tally::merge);
    let nodes = audit_nodes(map, margin);
    let disagreements = t.disagreements + nodes;
    let pass = n_samples > 0
        && disagreements == 0
        && t.acute_violations == 0
        && t.norm <= limits.norm
        && t.homog <= limits.homogeneity
        && t.inverse <= limits.inverse
        && t.modulus.is_finite();
    VerificationReport {
        samples: n_samples,
        disagreements,
        boundary_excluded: t.excluded,
        max_norm_error: t.norm,
        max_homog_error: t.homog,
        continuity_modulus: t.modulus,
        seed,
        pass,
        acute_violations: t.acute_violations,
        node_disagreements: nodes,
        orthogonal_pairs: t.orthogonal_pairs,
        max_inverse_error: t.inverse,
        margin,
        map: map.describe(),
    }
}
