//! Symmetry of Birkhoff-James orthogonality in a plane.

use std::f64::consts::PI;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orthogonality::oracle_min_over_line;
use crate::search::bisect;
use crate::space::{support_set, unit_at, Functional, NormedSpace};
use crate::vector::dot;

pub const MIN_RADON_GRID: usize = 16;
const TIE_REL: f64 = 1e-12;

/// One grid direction of a [`radon_defect`] sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadonRow {
    pub theta: f64,
    /// Angle in `[theta, theta + pi]` with `y(theta) ⊥ y(theta_star)`.
    pub theta_star: f64,
    /// `|f(y(theta_star))|` for the norming functional `f` of `y(theta)`.
    pub forward_residual: f64,
    /// `max(0, 1 - min_t |y(theta_star) + t y(theta)|)`.
    pub reverse_deficit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadonReport {
    pub defect: f64,
    /// First grid pair attaining the defect, when it exceeds the margin.
    pub witness: Option<(f64, f64)>,
    pub is_radon: bool,
    pub grid: usize,
    pub margin: f64,
    #[serde(skip)]
    pub rows: Vec<RadonRow>,
}

/// The angle `psi` in `[theta, theta + pi]` with `f(y(psi)) = 0`, where `f` is
/// the barycenter of the norming functionals at `y(theta)`.
pub fn orthogonal_partner(plane: &NormedSpace, theta: f64) -> Result<(f64, f64)> {
    if plane.dim() != 2 {
        return Err(Error::NotAPlane(plane.dim()));
    }
    let f: Functional = support_set(plane, &unit_at(plane, theta))?.barycenter();
    let root = bisect(|psi| dot(f.coords(), &unit_at(plane, psi)), theta, theta + PI, 0.0);
    Ok((root.arg, root.residual))
}

/// Largest failure of symmetry over `grid` uniform directions of `[0, pi)`.
pub fn radon_defect(plane: &NormedSpace, grid: usize, margin: f64) -> Result<RadonReport> {
    if plane.dim() != 2 {
        return Err(Error::NotAPlane(plane.dim()));
    }
    if grid < MIN_RADON_GRID {
        return Err(Error::GridTooCoarse { got: grid, min: MIN_RADON_GRID });
    }
    let rows = (0..grid)
        .into_par_iter()
        .map(|k| {
            let theta = PI * k as f64 / grid as f64;
            let (theta_star, forward_residual) = orthogonal_partner(plane, theta)?;
            let (_, m) = oracle_min_over_line(plane, &unit_at(plane, theta_star), &unit_at(plane, theta))?;
            Ok(RadonRow { theta, theta_star, forward_residual, reverse_deficit: (1.0 - m).max(0.0) })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<&RadonRow> = None;
    for row in &rows {
        // Deficits equal up to rounding (symmetric copies) keep the earlier row.
        if best.is_none_or(|b| row.reverse_deficit > b.reverse_deficit * (1.0 + TIE_REL) + f64::MIN_POSITIVE) {
            best = Some(row);
        }
    }
    let defect = best.map_or(0.0, |b| b.reverse_deficit);
    let witness = best.filter(|_| defect > margin).map(|b| (b.theta, b.theta_star));
    Ok(RadonReport { defect, witness, is_radon: defect <= margin, grid, margin, rows })
}

impl RadonReport {
    /// CSV with columns `theta,theta_star,forward_residual,reverse_deficit`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["theta", "theta_star", "forward_residual", "reverse_deficit"])?;
        for r in &self.rows {
            w.write_record(
                [r.theta, r.theta_star, r.forward_residual, r.reverse_deficit].map(|v| format!("{v:.16e}")),
            )?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_is_radon() {
        let r = radon_defect(&NormedSpace::euclidean(2).unwrap(), 360, 1e-9).unwrap();
        assert!(r.defect <= 1e-9 && r.is_radon && r.witness.is_none());
        for row in &r.rows {
            assert!((row.theta_star - row.theta - PI / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn day_james_is_radon() {
        let r = radon_defect(&NormedSpace::day_james(3.0, 1.5).unwrap(), 720, 1e-8).unwrap();
        assert!(r.defect <= 1e-8, "{}", r.defect);
    }

    #[test]
    fn l3_has_a_witness_near_the_known_pair() {
        let r = radon_defect(&NormedSpace::lp(2, 3.0).unwrap(), 720, 1e-8).unwrap();
        assert!(r.defect > 1e-2);
        let (t, s) = r.witness.unwrap();
        // (2,1) is orthogonal to (1,-4) in l3 but not conversely.
        let a = 1f64.atan2(2.0);
        let b = (-4f64).atan2(1.0) + PI;
        let near = |u: f64, v: f64| ((u - v).rem_euclid(PI)).min(PI - (u - v).rem_euclid(PI)) < 0.1;
        assert!(near(t, a) && near(s, b), "{t} {s}");
    }

    #[test]
    fn linf_partner_is_found_despite_corners() {
        let r = radon_defect(&NormedSpace::linf(2).unwrap(), 64, 1e-9).unwrap();
        assert!(r.rows.iter().all(|row| row.forward_residual < 1e-12));
    }

    #[test]
    fn errors() {
        assert!(matches!(radon_defect(&NormedSpace::linf(3).unwrap(), 64, 1e-9), Err(Error::NotAPlane(3))));
        assert!(matches!(radon_defect(&NormedSpace::linf(2).unwrap(), 8, 1e-9), Err(Error::GridTooCoarse { .. })));
    }

    #[test]
    fn csv_columns() {
        let r = radon_defect(&NormedSpace::euclidean(2).unwrap(), 16, 1e-9).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("theta,theta_star,forward_residual,reverse_deficit\n"));
        assert_eq!(text.lines().count(), 17);
    }
}
