//! Acute angles in an l-infinity sum `X ⊕ Y` from acute angles in the parts.
//!
//! For `z1 = (x1, y1) != 0` and `z2 = (x2, y2)`, `z1 ⊥+ z2` holds iff one of
//!
//! - (i) `|x1| > |y1|` and `x1 ⊥+ x2`,
//! - (ii) `|x1| = |y1|` and (`x1 ⊥+ x2` or `y1 ⊥+ y2`),
//! - (iii) `|x1| < |y1|` and `y1 ⊥+ y2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::orthogonality::{classify_angle, one_sided_acute_oracle, AngleRelation};
use crate::sampling::{acute_near_boundary, random_vector, stream, ORACLE_RESOLUTION};
use crate::space::NormedSpace;
use crate::tolerance::TAU_TIE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SumCase {
    FirstDominates,
    Tie,
    SecondDominates,
    /// `|x1|` and `|y1|` agree within the tie tolerance without being equal.
    NearTie,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrichotomyOutcome {
    pub case: SumCase,
    pub acute: bool,
    /// Acute statistics (see [`AngleRelation::acute_statistic`]) of the
    /// part pairs the case depends on.
    pub deciding: [Option<f64>; 2],
}

fn acute_in(space: &NormedSpace, a: &[f64], b: &[f64], margin: f64) -> Result<AngleRelation> {
    classify_angle(space, a, b, margin)
}

/// Evaluates the case analysis for `z1 = (x1, y1)` and `z2 = (x2, y2)`.
pub fn sum_trichotomy(
    x_space: &NormedSpace,
    y_space: &NormedSpace,
    z1: (&[f64], &[f64]),
    z2: (&[f64], &[f64]),
    margin: f64,
) -> Result<TrichotomyOutcome> {
    let (x1, y1) = z1;
    let (x2, y2) = z2;
    let nx = x_space.norm(x1)?;
    let ny = y_space.norm(y1)?;
    let case = if nx == ny {
        SumCase::Tie
    } else if (nx - ny).abs() <= TAU_TIE * nx.max(ny) {
        SumCase::NearTie
    } else if nx > ny {
        SumCase::FirstDominates
    } else {
        SumCase::SecondDominates
    };
    let (acute, deciding) = match case {
        SumCase::FirstDominates => {
            let r = acute_in(x_space, x1, x2, margin)?;
            (r.is_acute(), [Some(r.acute_statistic()), None])
        }
        SumCase::SecondDominates => {
            let r = acute_in(y_space, y1, y2, margin)?;
            (r.is_acute(), [None, Some(r.acute_statistic())])
        }
        SumCase::Tie | SumCase::NearTie => {
            let a = acute_in(x_space, x1, x2, margin)?;
            let b = acute_in(y_space, y1, y2, margin)?;
            (a.is_acute() || b.is_acute(), [Some(a.acute_statistic()), Some(b.acute_statistic())])
        }
    };
    Ok(TrichotomyOutcome { case, acute, deciding })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumAcuteReport {
    pub samples: usize,
    pub compared: usize,
    pub disagreements: usize,
    pub boundary_excluded: usize,
    pub tie_excluded: usize,
    /// Compared samples that fell in the tie case.
    pub exact_ties: usize,
    pub excluded_fraction: f64,
    pub seed: u64,
    pub margin: f64,
    pub pass: bool,
}

#[derive(Default, Clone, Copy)]
struct Counts {
    compared: usize,
    disagreements: usize,
    boundary: usize,
    tie: usize,
    exact_ties: usize,
}

/// Rescales `y` so that `|y| = target` holds exactly, if a few attempts manage it.
fn force_tie(space: &NormedSpace, y: &mut [f64], target: f64) {
    for _ in 0..4 {
        let n = space.norm_unchecked(y);
        if n == target {
            return;
        }
        let c = target / n;
        y.iter_mut().for_each(|v| *v *= c);
    }
}

fn sample(x_space: &NormedSpace, y_space: &NormedSpace, sum: &NormedSpace, margin: f64, seed: u64, i: u64) -> Result<Counts> {
    let mut rng = stream(seed, i);
    let mut x1 = random_vector(&mut rng, x_space);
    let mut y1 = random_vector(&mut rng, y_space);
    let x2 = random_vector(&mut rng, x_space);
    let y2 = random_vector(&mut rng, y_space);
    if i.is_multiple_of(4) {
        force_tie(y_space, &mut y1, x_space.norm_unchecked(&x1));
    } else if i % 4 == 1 {
        // Scale the parts apart so both strict cases occur often.
        let s = if i % 8 == 1 { 3.0 } else { 1.0 / 3.0 };
        x1.iter_mut().for_each(|v| *v *= s);
    }
    let t = sum_trichotomy(x_space, y_space, (&x1, &y1), (&x2, &y2), margin)?;
    let mut c = Counts::default();
    if t.case == SumCase::NearTie {
        c.tie = 1;
        return Ok(c);
    }
    let z1: Vec<f64> = x1.iter().chain(&y1).copied().collect();
    let z2: Vec<f64> = x2.iter().chain(&y2).copied().collect();
    let whole = classify_angle(sum, &z1, &z2, margin)?;
    let near = |s: f64| acute_near_boundary(s, margin, ORACLE_RESOLUTION);
    if near(whole.acute_statistic()) || t.deciding.iter().flatten().any(|s| near(*s)) {
        c.boundary = 1;
        return Ok(c);
    }
    c.compared = 1;
    c.exact_ties = usize::from(t.case == SumCase::Tie);
    if t.acute != one_sided_acute_oracle(sum, &z1, &z2, margin)? {
        c.disagreements = 1;
    }
    Ok(c)
}

/// Compares the case analysis with the half-line minimization oracle on the
/// sum space over `n_samples` seeded samples. A quarter of the samples force
/// `|x1| = |y1|` exactly. Samples whose deciding statistics lie within
/// `[margin / 10, ORACLE_RESOLUTION]` of the threshold, or whose norms tie
/// only approximately, are excluded rather than adjudicated.
pub fn sum_acute_equivalence_check(
    x_space: &NormedSpace,
    y_space: &NormedSpace,
    n_samples: usize,
    margin: f64,
    seed: u64,
) -> Result<SumAcuteReport> {
    let sum = NormedSpace::inf_sum(vec![x_space.clone(), y_space.clone()])?;
    let all = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| sample(x_space, y_space, &sum, margin, seed, i))
        .collect::<Result<Vec<Counts>>>()?;
    let mut t = Counts::default();
    for c in all {
        t.compared += c.compared;
        t.disagreements += c.disagreements;
        t.boundary += c.boundary;
        t.tie += c.tie;
        t.exact_ties += c.exact_ties;
    }
    let excluded_fraction = if n_samples == 0 { 0.0 } else { (t.boundary + t.tie) as f64 / n_samples as f64 };
    Ok(SumAcuteReport {
        samples: n_samples,
        compared: t.compared,
        disagreements: t.disagreements,
        boundary_excluded: t.boundary,
        tie_excluded: t.tie,
        exact_ties: t.exact_ties,
        excluded_fraction,
        seed,
        margin,
        pass: t.disagreements == 0,
    })
}
