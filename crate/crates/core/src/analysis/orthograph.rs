//! Finite samples of the orthogonality graph: vertices are one-dimensional
//! subspaces, edges join mutually orthogonal ones.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use super::radon::orthogonal_partner;
use crate::error::{Error, Result};
use crate::orthogonality::is_mutually_orthogonal;
use crate::space::{unit_at, NormedSpace};
use crate::vector::{check_dim, circle_point, euclidean_norm};

/// Angles closer than this (modulo pi) name the same vertex.
const ANGLE_DEDUP: f64 = 1e-12;

/// How the vertex set is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum Directions {
    /// `n` uniform angles `k pi / n` of a plane.
    Uniform(usize),
    /// Explicit angles of a plane, in radians.
    Angles(Vec<f64>),
    /// Explicit direction vectors of any space.
    Vectors(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Orthograph {
    /// Vertex representatives, each scaled to unit norm in the space.
    pub vertices: Vec<Vec<f64>>,
    /// Angle in `[0, pi)` of each vertex, for planes.
    pub angles: Option<Vec<f64>>,
    pub adjacency: Vec<Vec<bool>>,
}

impl Orthograph {
    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.adjacency[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].iter().filter(|e| **e).count()
    }

    /// One `i j` pair per line.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> Result<()> {
        for (i, j) in self.edges() {
            writeln!(out, "{i} {j}")?;
        }
        Ok(())
    }
}

fn reduce_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    if PI - t < ANGLE_DEDUP {
        0.0
    } else {
        t
    }
}

fn push_angle(angles: &mut Vec<f64>, theta: f64) {
    let t = reduce_angle(theta);
    if !angles.iter().any(|a| (a - t).abs() < ANGLE_DEDUP) {
        angles.push(t);
    }
}

/// Unit vector with its first nonzero coordinate positive.
fn canonical(space: &NormedSpace, v: &[f64]) -> Result<Vec<f64>> {
    check_dim(space.dim(), v)?;
    let n = space.norm_unchecked(v);
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    let sign = v.iter().find(|c| **c != 0.0).map_or(1.0, |c| c.signum());
    Ok(v.iter().map(|c| sign * c / n).collect())
}

/// Samples the orthograph of `space`. With `refine`, each planar vertex also
/// gets its exact orthogonal partner (found by bisection) as a vertex.
pub fn sample_orthograph(space: &NormedSpace, directions: &Directions, margin: f64, refine: bool) -> Result<Orthograph> {
    let planar = |angles: Vec<f64>| -> Result<Vec<f64>> {
        if space.dim() != 2 {
            return Err(Error::NotAPlane(space.dim()));
        }
        let mut out = Vec::new();
        for a in &angles {
            push_angle(&mut out, *a);
        }
        if refine {
            for a in out.clone() {
                push_angle(&mut out, orthogonal_partner(space, a)?.0);
            }
        }
        Ok(out)
    };
    let (vertices, angles) = match directions {
        Directions::Uniform(n) => {
            let a = planar((0..*n).map(|k| PI * k as f64 / *n as f64).collect())?;
            (a.iter().map(|t| unit_at(space, *t).to_vec()).collect::<Vec<_>>(), Some(a))
        }
        Directions::Angles(list) => {
            let a = planar(list.clone())?;
            (a.iter().map(|t| unit_at(space, *t).to_vec()).collect(), Some(a))
        }
        Directions::Vectors(list) => {
            let mut out: Vec<Vec<f64>> = Vec::new();
            for v in list {
                let c = canonical(space, v)?;
                let dup = out.iter().any(|w| {
                    let d: Vec<f64> = w.iter().zip(&c).map(|(a, b)| a - b).collect();
                    euclidean_norm(&d) < ANGLE_DEDUP
                });
                if !dup {
                    out.push(c);
                }
            }
            if space.dim() == 2 {
                let a = planar(out.iter().map(|v| v[1].atan2(v[0])).collect())?;
                let verts = a.iter().map(|t| unit_at(space, *t).to_vec()).collect();
                (verts, Some(a))
            } else {
                (out, None)
            }
        }
    };
    let n = vertices.len();
    let mut adjacency = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let e = is_mutually_orthogonal(space, &vertices[i], &vertices[j], margin)?;
            adjacency[i][j] = e;
            adjacency[j][i] = e;
        }
    }
    Ok(Orthograph { vertices, angles, adjacency })
}

/// The `n` points `(theta, x, y)` of the unit circle of a plane at uniform
/// angles of `[0, 2 pi)`.
pub fn unit_circle(plane: &NormedSpace, n: usize) -> Result<Vec<[f64; 3]>> {
    if plane.dim() != 2 {
        return Err(Error::NotAPlane(plane.dim()));
    }
    Ok((0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            let c = circle_point(t);
            let r = plane.norm_unchecked(&c);
            [t, c[0] / r, c[1] / r]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::DEFAULT_MARGIN as M;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn euclidean_square() {
        let s = NormedSpace::euclidean(2).unwrap();
        let g = sample_orthograph(&s, &Directions::Angles(vec![0.0, FRAC_PI_4, PI / 2.0, 3.0 * FRAC_PI_4]), M, false)
            .unwrap();
        assert_eq!(g.edges(), vec![(0, 2), (1, 3)]);
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0 2\n1 3\n");
    }

    #[test]
    fn day_james_partners_are_unique() {
        let s = NormedSpace::day_james(3.0, 1.5).unwrap();
        let g = sample_orthograph(&s, &Directions::Uniform(360), M, true).unwrap();
        assert!(g.vertices.len() >= 360);
        for i in 0..g.vertices.len() {
            assert_eq!(g.degree(i), 1, "vertex {i} at {}", g.angles.as_ref().unwrap()[i]);
        }
    }

    #[test]
    fn l3_asymmetric_pair_has_no_edge() {
        let s = NormedSpace::lp(2, 3.0).unwrap();
        let g = sample_orthograph(&s, &Directions::Angles(vec![1f64.atan2(2.0), (-4f64).atan2(1.0)]), M, false).unwrap();
        assert!(g.edges().is_empty());
        // One direction holds: (2,1) ⊥ (1,-4).
        assert!(crate::is_bj_orthogonal(&s, &[2.0, 1.0], &[1.0, -4.0], M).unwrap());
    }

    #[test]
    fn vectors_are_deduplicated_modulo_sign() {
        let s = NormedSpace::linf(3).unwrap();
        let g = sample_orthograph(
            &s,
            &Directions::Vectors(vec![vec![1.0, 0.0, 0.0], vec![-2.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]),
            M,
            false,
        )
        .unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn adjacency_is_symmetric() {
        let s = NormedSpace::parse_compact("sum(lp:2:3,linf:1)").unwrap();
        let vs: Vec<Vec<f64>> = (0..30)
            .map(|k| {
                let t = k as f64 * 0.37;
                vec![t.cos(), t.sin(), (2.0 * t).cos()]
            })
            .collect();
        let g = sample_orthograph(&s, &Directions::Vectors(vs), M, false).unwrap();
        for i in 0..g.vertices.len() {
            for j in 0..g.vertices.len() {
                assert_eq!(g.adjacency[i][j], g.adjacency[j][i]);
            }
        }
    }

    #[test]
    fn circle_points_have_unit_norm() {
        let s = NormedSpace::day_james(3.0, 1.5).unwrap();
        for [_, x, y] in unit_circle(&s, 100).unwrap() {
            assert!((s.norm(&[x, y]).unwrap() - 1.0).abs() < 1e-14);
        }
    }
}
