//! Support-functional decisions against line-minimization oracles, and the
//! structural properties of the angle relations.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::orthogonality::{classify_angle, is_bj_orthogonal_oracle, one_sided_acute_oracle, AngleRelation, AngleTag};
use crate::sampling::{
    acute_near_boundary, gaussian_vector, orthogonal_companion, orthogonality_near_boundary, random_vector, stream,
    ORACLE_RESOLUTION,
};
use crate::space::NormedSpace;
use crate::vector::{axpy, scale};

/// Acute statistic of `(x, -y)`: the pair is obtuse iff this is at least `-margin`.
fn obtuse_statistic(r: &AngleRelation) -> f64 {
    if r.y_norm == 0.0 {
        0.0
    } else {
        -r.min_bound / r.y_norm
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleAgreementReport {
    pub samples: usize,
    pub orthogonality_compared: usize,
    pub orthogonality_disagreements: usize,
    pub one_sided_compared: usize,
    pub one_sided_disagreements: usize,
    pub boundary_excluded: usize,
    pub seed: u64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Default, Clone, Copy)]
struct AgreementCounts {
    ortho: usize,
    ortho_bad: usize,
    side: usize,
    side_bad: usize,
    excluded: usize,
}

/// The `y` of sample `i`: a constructed orthogonal companion, a random vector,
/// or a companion nudged off orthogonality, in rotation.
fn sample_pair(space: &NormedSpace, seed: u64, i: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = stream(seed, i);
    let x = random_vector(&mut rng, space);
    let y = match i % 3 {
        0 => orthogonal_companion(&mut rng, space, &x),
        1 => random_vector(&mut rng, space),
        _ => {
            let c = orthogonal_companion(&mut rng, space, &x);
            let nudge = gaussian_vector(&mut rng, space.dim());
            axpy(&c, 0.05 * space.norm_unchecked(&c) / space.norm_unchecked(&nudge).max(1e-300), &nudge)
        }
    };
    (x, y)
}

/// Compares [`classify_angle`] with [`is_bj_orthogonal_oracle`] and
/// [`one_sided_acute_oracle`] (for acute `y` and obtuse `-y`) on `n_samples`
/// pairs, cycling through `spaces`. A decision is excluded when its statistic
/// lies in `[margin / 10, ORACLE_RESOLUTION]` on the failing side.
pub fn oracle_agreement(spaces: &[NormedSpace], n_samples: usize, margin: f64, seed: u64) -> Result<OracleAgreementReport> {
    let counts = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| {
            let space = &spaces[i as usize % spaces.len()];
            let (x, y) = sample_pair(space, seed, i);
            let r = classify_angle(space, &x, &y, margin)?;
            let mut c = AgreementCounts::default();
            if orthogonality_near_boundary(r.orthogonality_gap(), margin, ORACLE_RESOLUTION) {
                c.excluded += 1;
            } else {
                c.ortho += 1;
                if r.is_orthogonal() != is_bj_orthogonal_oracle(space, &x, &y, margin)? {
                    c.ortho_bad += 1;
                }
            }
            let neg_y = scale(-1.0, &y);
            for (stat, decided, dir) in [(r.acute_statistic(), r.is_acute(), &y), (obtuse_statistic(&r), r.is_obtuse(), &neg_y)] {
                if acute_near_boundary(stat, margin, ORACLE_RESOLUTION) {
                    c.excluded += 1;
                } else {
                    c.side += 1;
                    if decided != one_sided_acute_oracle(space, &x, dir, margin)? {
                        c.side_bad += 1;
                    }
                }
            }
            Ok(c)
        })
        .collect::<Result<Vec<AgreementCounts>>>()?;
    let mut t = AgreementCounts::default();
    for c in counts {
        t.ortho += c.ortho;
        t.ortho_bad += c.ortho_bad;
        t.side += c.side;
        t.side_bad += c.side_bad;
        t.excluded += c.excluded;
    }
    Ok(OracleAgreementReport {
        samples: n_samples,
        orthogonality_compared: t.ortho,
        orthogonality_disagreements: t.ortho_bad,
        one_sided_compared: t.side,
        one_sided_disagreements: t.side_bad,
        boundary_excluded: t.excluded,
        seed,
        margin,
        pass: t.ortho_bad == 0 && t.side_bad == 0,
    })
}

/// Violation and check counts for one structural property.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct PropertyCount {
    pub checked: usize,
    pub violations: usize,
}

impl PropertyCount {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.violations += usize::from(!ok);
    }

    fn add(&mut self, o: PropertyCount) {
        self.checked += o.checked;
        self.violations += o.violations;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantReport {
    pub samples: usize,
    /// `x ⊥ x` only for `x = 0`; in fact `x` is strictly acute to itself.
    pub nondegeneracy: PropertyCount,
    /// The relation of `(a x, b y)` equals that of `(x, y)` for `a, b > 0`,
    /// and orthogonality is kept for `a, b` of either sign.
    pub positive_scaling: PropertyCount,
    /// `x ⊥+ y` iff `x ⊥- (-y)` iff `(-x) ⊥+ (-y)`.
    pub reflection: PropertyCount,
    /// Orthogonal iff both acute and obtuse, the latter two decided separately.
    pub orthogonal_is_acute_and_obtuse: PropertyCount,
    /// Positive combinations of strictly acute directions stay strictly acute.
    pub cone_convexity: PropertyCount,
    pub seed: u64,
    pub margin: f64,
    pub pass: bool,
}

fn mirror(tag: AngleTag) -> AngleTag {
    match tag {
        AngleTag::StrictlyAcute => AngleTag::StrictlyObtuse,
        AngleTag::StrictlyObtuse => AngleTag::StrictlyAcute,
        t => t,
    }
}

/// Whether any decision statistic of `r` is within `[margin / 10, 10 margin]`
/// of its threshold, where rounding could legitimately flip it.
fn near_threshold(r: &AngleRelation, margin: f64) -> bool {
    let upper = 10.0 * margin;
    orthogonality_near_boundary(r.orthogonality_gap(), margin, upper)
        || acute_near_boundary(r.acute_statistic(), margin, upper)
        || acute_near_boundary(obtuse_statistic(r), margin, upper)
}

/// A `y` with `min_bound > 10 margin |y|` for `x`, trying `±` random vectors.
fn strictly_acute_direction<R: Rng>(rng: &mut R, space: &NormedSpace, x: &[f64], margin: f64) -> Result<Option<Vec<f64>>> {
    for _ in 0..8 {
        let y = random_vector(rng, space);
        for cand in [y.clone(), scale(-1.0, &y)] {
            let r = classify_angle(space, x, &cand, margin)?;
            if r.min_bound > 10.0 * margin * r.y_norm {
                return Ok(Some(cand));
            }
        }
    }
    Ok(None)
}

type Counts5 = [PropertyCount; 5];

fn invariant_sample(space: &NormedSpace, margin: f64, seed: u64, i: u64) -> Result<Counts5> {
    let mut c: Counts5 = Default::default();
    let mut rng = stream(seed, i);
    let x = random_vector(&mut rng, space);
    let y = if i.is_multiple_of(2) { orthogonal_companion(&mut rng, space, &x) } else { random_vector(&mut rng, space) };

    // Nondegeneracy, at the sample and at a tiny multiple of it.
    for s in [1.0, 1e-6] {
        let v = scale(s, &x);
        c[0].record(classify_angle(space, &v, &v, margin)?.tag == AngleTag::StrictlyAcute);
    }

    let r = classify_angle(space, &x, &y, margin)?;
    if !near_threshold(&r, margin) {
        let a = rng.random_range(-3.0..3.0_f64).exp();
        let b = rng.random_range(-3.0..3.0_f64).exp();
        let scaled = classify_angle(space, &scale(a, &x), &scale(b, &y), margin)?;
        // Orthogonality alone survives scalars of either sign.
        let (sa, sb) = (if rng.random() { a } else { -a }, if rng.random() { b } else { -b });
        let signed = classify_angle(space, &scale(sa, &x), &scale(sb, &y), margin)?;
        c[1].record(scaled.tag == r.tag && signed.is_orthogonal() == r.is_orthogonal());

        let flipped = classify_angle(space, &x, &scale(-1.0, &y), margin)?;
        let both = classify_angle(space, &scale(-1.0, &x), &scale(-1.0, &y), margin)?;
        c[2].record(flipped.tag == mirror(r.tag) && both.tag == r.tag);

        let acute = r.acute_statistic() >= -margin;
        let obtuse = flipped.acute_statistic() >= -margin;
        c[3].record(r.is_orthogonal() == (acute && obtuse));
    }

    if let (Some(y1), Some(y2)) = (
        strictly_acute_direction(&mut rng, space, &x, margin)?,
        strictly_acute_direction(&mut rng, space, &x, margin)?,
    ) {
        let t: f64 = rng.random_range(0.0..1.0);
        let s = rng.random_range(-3.0..3.0_f64).exp();
        let mix = scale(s, &axpy(&scale(t, &y1), 1.0 - t, &y2));
        c[4].record(classify_angle(space, &x, &mix, margin)?.tag == AngleTag::StrictlyAcute);
    }
    Ok(c)
}

/// Checks the structural properties of the angle relations on `n_samples`
/// seeded samples cycling through `spaces`.
pub fn structural_invariants(spaces: &[NormedSpace], n_samples: usize, margin: f64, seed: u64) -> Result<InvariantReport> {
    let all = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| invariant_sample(&spaces[i as usize % spaces.len()], margin, seed, i))
        .collect::<Result<Vec<Counts5>>>()?;
    let mut t: Counts5 = Default::default();
    for c in all {
        for (a, b) in t.iter_mut().zip(c) {
            a.add(b);
        }
    }
    let pass = t.iter().all(|p| p.violations == 0);
    Ok(InvariantReport {
        samples: n_samples,
        nondegeneracy: t[0],
        positive_scaling: t[1],
        reflection: t[2],
        orthogonal_is_acute_and_obtuse: t[3],
        cone_convexity: t[4],
        seed,
        margin,
        pass,
    })
}
