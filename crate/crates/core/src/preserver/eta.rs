//! The angle map `eta` of a smooth plane.
//!
//! For a direction `theta` in the first quadrant, `eta(theta)` is the angle in
//! `[pi/2, pi]` whose unit vector `y(eta)` is Birkhoff-James orthogonal to
//! `y(theta)`. It is a continuous increasing bijection with `eta(0) = pi/2`
//! and `eta(pi/2) = pi`. The table stores `eta` on a uniform grid; every other
//! value is obtained by a fresh bisection bracketed by the adjacent nodes.

use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::orthogonality::is_bj_orthogonal;
use crate::search::{bisect, Root};
use crate::space::{support_set, unit_at, Functional, NormedSpace};
use crate::vector::{circle_point, dot, euclidean_norm};

/// Smallest accepted `grid_size`.
pub const MIN_GRID: usize = 64;
pub const DEFAULT_GRID: usize = 1024;
/// Orthogonality margin every table node must satisfy.
pub const NODE_MARGIN: f64 = 1e-8;

/// The unique norming functional of the unit vector at `theta`.
fn smooth_functional(plane: &NormedSpace, theta: f64) -> Result<Functional> {
    let s = support_set(plane, &unit_at(plane, theta))?;
    if !s.is_singleton() {
        return Err(Error::NotSmooth(s.extremes().len()));
    }
    Ok(s.extremes()[0].clone())
}

/// Bisects `psi -> f(y(psi))` between the angles `lo` and `hi`.
pub(crate) fn kernel_angle(plane: &NormedSpace, f: &Functional, lo: f64, hi: f64, ftol: f64) -> Root {
    bisect(|psi| dot(f.coords(), &unit_at(plane, psi)), lo, hi, ftol)
}

/// `eta(theta)` by bisection over the whole of `[pi/2, pi]`, stopping once
/// `|f(y(eta))| <= tol * |f|`. Pass `tol = 0` for full precision.
pub fn solve_eta(plane: &NormedSpace, theta: f64, tol: f64) -> Result<f64> {
    if plane.dim() != 2 {
        return Err(Error::NotAPlane(plane.dim()));
    }
    if !(0.0..=FRAC_PI_2).contains(&theta) {
        return Err(Error::AngleOutOfRange(theta));
    }
    if theta == 0.0 {
        return Ok(FRAC_PI_2);
    }
    if theta == FRAC_PI_2 {
        return Ok(PI);
    }
    let f = smooth_functional(plane, theta)?;
    let root = kernel_angle(plane, &f, FRAC_PI_2, PI, tol * euclidean_norm(f.coords()));
    if !root.bracketed {
        return Err(Error::NoBracket { lo: FRAC_PI_2, hi: PI });
    }
    Ok(root.arg)
}

/// `eta` tabulated on `grid_size + 1` uniform nodes of `[0, pi/2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaTable {
    plane: NormedSpace,
    grid: Vec<f64>,
    values: Vec<f64>,
    residuals: Vec<f64>,
}

fn uniform_grid(n: usize) -> Vec<f64> {
    let mut grid: Vec<f64> = (0..=n).map(|i| FRAC_PI_2 * i as f64 / n as f64).collect();
    grid[n] = FRAC_PI_2;
    grid
}

impl EtaTable {
    /// Tabulates `eta` for a smooth plane and checks the table invariants.
    pub fn build(plane: &NormedSpace, grid_size: usize) -> Result<Self> {
        if plane.dim() != 2 {
            return Err(Error::NotAPlane(plane.dim()));
        }
        if grid_size < MIN_GRID {
            return Err(Error::GridTooCoarse { got: grid_size, min: MIN_GRID });
        }
        let grid = uniform_grid(grid_size);
        let values = grid
            .iter()
            .map(|&t| solve_eta(plane, t, 0.0))
            .collect::<Result<Vec<_>>>()?;
        let mut table = Self {
            plane: plane.clone(),
            grid,
            values,
            residuals: Vec::new(),
        };
        table.residuals = table.compute_residuals()?;
        table.validate()?;
        Ok(table)
    }

    fn compute_residuals(&self) -> Result<Vec<f64>> {
        self.grid
            .iter()
            .zip(&self.values)
            .map(|(&t, &e)| {
                let f = smooth_functional(&self.plane, t)?;
                Ok(dot(f.coords(), &unit_at(&self.plane, e)).abs())
            })
            .collect()
    }

    /// Checks endpoints, strict monotonicity and node orthogonality.
    pub fn validate(&self) -> Result<()> {
        let last = self.values.len() - 1;
        if (self.values[0] - FRAC_PI_2).abs() > 1e-10 || (self.values[last] - PI).abs() > 1e-10 {
            return Err(Error::InvalidEtaTable(format!(
                "endpoints ({}, {}) differ from (pi/2, pi)",
                self.values[0], self.values[last]
            )));
        }
        if let Some(i) = self.first_monotonicity_violation() {
            return Err(Error::MonotonicityViolation { index: i });
        }
        if let Some(i) = self.node_failures(NODE_MARGIN)?.first() {
            return Err(Error::InvalidEtaTable(format!(
                "node {i} is not orthogonal to its eta value"
            )));
        }
        Ok(())
    }

    fn first_monotonicity_violation(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[1] <= w[0]).map(|i| i + 1)
    }

    /// Nodes `i` for which `y(grid[i])` is not orthogonal to `y(values[i])`
    /// within `margin`, plus nodes where strict monotonicity breaks.
    pub fn node_failures(&self, margin: f64) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for (i, (&t, &e)) in self.grid.iter().zip(&self.values).enumerate() {
            let u = unit_at(&self.plane, t);
            let w = unit_at(&self.plane, e);
            let monotone = i == 0 || self.values[i] > self.values[i - 1];
            if !monotone || !is_bj_orthogonal(&self.plane, &u, &w, margin)? {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    pub fn plane(&self) -> &NormedSpace {
        &self.plane
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn grid_size(&self) -> usize {
        self.grid.len() - 1
    }

    fn cell(&self, theta: f64) -> usize {
        let n = self.grid_size();
        let mut k = ((theta / FRAC_PI_2) * n as f64).floor().clamp(0.0, (n - 1) as f64) as usize;
        while k > 0 && self.grid[k] > theta {
            k -= 1;
        }
        while k + 1 < n && self.grid[k + 1] < theta {
            k += 1;
        }
        k
    }

    /// `eta(theta)` for `theta` in `[0, pi/2]`, re-solved inside the cell
    /// that contains `theta`. If the tabulated endpoints of that cell do not
    /// bracket the root, the closer endpoint is returned unchanged.
    pub fn eta(&self, theta: f64) -> f64 {
        let theta = theta.clamp(0.0, FRAC_PI_2);
        let k = self.cell(theta);
        if theta == self.grid[k] {
            return self.values[k];
        }
        if theta == self.grid[k + 1] {
            return self.values[k + 1];
        }
        let f = match smooth_functional(&self.plane, theta) {
            Ok(f) => f,
            Err(_) => return self.values[k],
        };
        kernel_angle(&self.plane, &f, self.values[k], self.values[k + 1], 0.0).arg
    }

    /// The `theta` in `[0, pi/2]` with `eta(theta) = phi`, for `phi` in
    /// `[pi/2, pi]`. Bisects `theta -> f_theta(x(phi))` inside the grid cell
    /// whose tabulated values bracket `phi`.
    pub fn eta_inverse(&self, phi: f64) -> Result<f64> {
        let phi = phi.clamp(FRAC_PI_2, PI);
        let n = self.grid_size();
        let k = self
            .values
            .partition_point(|&v| v <= phi)
            .saturating_sub(1)
            .min(n - 1);
        if self.values[k] == phi {
            return Ok(self.grid[k]);
        }
        if self.values[k + 1] == phi {
            return Ok(self.grid[k + 1]);
        }
        let target = circle_point(phi);
        let plane = &self.plane;
        let root = bisect(
            |t| match smooth_functional(plane, t) {
                Ok(f) => dot(f.coords(), &target),
                Err(_) => f64::NAN,
            },
            self.grid[k],
            self.grid[k + 1],
            0.0,
        );
        if !root.bracketed || !root.residual.is_finite() {
            return Err(Error::NonConvergence { residual: root.residual });
        }
        Ok(root.arg)
    }

    /// Copy of the table with entries `i` and `j` exchanged. The result skips
    /// validation; it exists to check that verification detects a broken map.
    pub fn with_swapped_entries(&self, i: usize, j: usize) -> Self {
        let mut t = self.clone();
        t.values.swap(i, j);
        t.residuals.swap(i, j);
        t
    }

    /// Writes `theta,eta,residual` rows with 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["theta", "eta", "residual"])?;
        for ((t, e), r) in self.grid.iter().zip(&self.values).zip(&self.residuals) {
            w.write_record([format!("{t:.16e}"), format!("{e:.16e}"), format!("{r:.16e}")])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a table written by [`EtaTable::write_csv`] and re-checks it
    /// against `plane`.
    pub fn read_csv<R: Read>(plane: &NormedSpace, input: R) -> Result<Self> {
        if plane.dim() != 2 {
            return Err(Error::NotAPlane(plane.dim()));
        }
        let mut r = csv::Reader::from_reader(input);
        let mut grid = Vec::new();
        let mut values = Vec::new();
        for row in r.deserialize() {
            let (t, e, _residual): (f64, f64, f64) = row?;
            grid.push(t);
            values.push(e);
        }
        let n = grid.len().saturating_sub(1);
        if n < MIN_GRID {
            return Err(Error::GridTooCoarse { got: n, min: MIN_GRID });
        }
        let expected = uniform_grid(n);
        if let Some(i) = grid.iter().zip(&expected).position(|(a, b)| (a - b).abs() > 1e-12) {
            return Err(Error::InvalidEtaTable(format!("row {i} is off the uniform grid")));
        }
        let mut table = Self {
            plane: plane.clone(),
            grid: expected,
            values,
            residuals: Vec::new(),
        };
        table.residuals = table.compute_residuals()?;
        table.validate()?;
        Ok(table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthogonality::oracle_min_over_line;
    use std::f64::consts::FRAC_PI_4;

    fn dj() -> NormedSpace {
        NormedSpace::day_james(3.0, 1.5).unwrap()
    }

    /// Independent route to `eta`: for a smooth plane the orthogonal direction
    /// of `y(theta)` is the kernel of its gradient, i.e. the direction `(-f2, f1)`.
    fn kernel_direction(plane: &NormedSpace, theta: f64) -> f64 {
        let f = support_set(plane, &unit_at(plane, theta)).unwrap().extremes()[0].clone();
        f.coords()[0].atan2(-f.coords()[1])
    }

    #[test]
    fn endpoints_are_exact() {
        assert_eq!(solve_eta(&dj(), 0.0, 1e-12).unwrap(), FRAC_PI_2);
        assert_eq!(solve_eta(&dj(), FRAC_PI_2, 1e-12).unwrap(), PI);
    }

    #[test]
    fn diagonal_maps_to_antidiagonal() {
        // At (1,1) the Day-James gradient is proportional to (1,1), whose kernel is 3pi/4.
        let e = solve_eta(&dj(), FRAC_PI_4, 1e-12).unwrap();
        assert!((e - 3.0 * FRAC_PI_4).abs() < 1e-12, "{e}");
        let e = solve_eta(&NormedSpace::euclidean(2).unwrap(), FRAC_PI_4, 1e-12).unwrap();
        assert!((e - 3.0 * FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn frozen_off_diagonal_value() {
        // theta = pi/6: gradient proportional to (cos^2, sin^2) = (3/4, 1/4),
        // kernel direction (-1/4, 3/4), angle pi - atan(3).
        let e = solve_eta(&dj(), PI / 6.0, 0.0).unwrap();
        assert!((e - 1.892_546_881_191_539).abs() < 1e-13, "{e}");
    }

    #[test]
    fn bisection_matches_kernel_direction() {
        for i in 1..100 {
            let t = FRAC_PI_2 * i as f64 / 100.0;
            let e = solve_eta(&dj(), t, 0.0).unwrap();
            assert!((e - kernel_direction(&dj(), t)).abs() < 1e-12);
        }
    }

    #[test]
    fn solved_pair_is_a_line_minimum() {
        let u = unit_at(&dj(), FRAC_PI_4 / 2.0);
        let e = solve_eta(&dj(), FRAC_PI_4 / 2.0, 1e-12).unwrap();
        let (_, v) = oracle_min_over_line(&dj(), &u, &unit_at(&dj(), e)).unwrap();
        assert!(v >= 1.0 - 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(solve_eta(&NormedSpace::linf(3).unwrap(), 0.3, 0.0), Err(Error::NotAPlane(3))));
        assert!(matches!(solve_eta(&NormedSpace::linf(2).unwrap(), FRAC_PI_4, 0.0), Err(Error::NotSmooth(2))));
        assert!(matches!(solve_eta(&dj(), 2.0, 0.0), Err(Error::AngleOutOfRange(_))));
        assert!(matches!(EtaTable::build(&dj(), 16), Err(Error::GridTooCoarse { got: 16, min: 64 })));
    }

    #[test]
    fn table_invariants() {
        let t = EtaTable::build(&dj(), 128).unwrap();
        assert_eq!(t.values()[0], FRAC_PI_2);
        assert_eq!(t.values()[128], PI);
        assert!(t.values().windows(2).all(|w| w[1] > w[0]));
        assert!(t.residuals().iter().all(|r| *r <= 1e-8));
        assert!(t.node_failures(1e-9).unwrap().is_empty());
    }

    #[test]
    fn off_grid_eta_is_resolved_not_interpolated() {
        let t = EtaTable::build(&dj(), 64).unwrap();
        for i in 0..200 {
            let theta = 0.0037 + i as f64 * 0.0077;
            let e = t.eta(theta);
            assert!((e - kernel_direction(&dj(), theta)).abs() < 1e-12);
            let back = t.eta_inverse(e).unwrap();
            assert!((back - theta).abs() < 1e-10, "{theta} {back}");
        }
    }

    #[test]
    fn swapped_table_fails_validation() {
        let t = EtaTable::build(&dj(), 64).unwrap();
        let bad = t.with_swapped_entries(10, 40);
        assert!(matches!(bad.validate(), Err(Error::MonotonicityViolation { index: 11 })));
        assert!(!bad.node_failures(1e-9).unwrap().is_empty());
    }

    #[test]
    fn csv_round_trip() {
        let t = EtaTable::build(&dj(), 64).unwrap();
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("theta,eta,residual\n"));
        let back = EtaTable::read_csv(&dj(), buf.as_slice()).unwrap();
        assert_eq!(back.values(), t.values());

        let mut bad = Vec::new();
        t.with_swapped_entries(3, 30).write_csv(&mut bad).unwrap();
        assert!(EtaTable::read_csv(&dj(), bad.as_slice()).is_err());
    }
}
