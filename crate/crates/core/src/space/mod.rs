//! Finite-dimensional real normed spaces.
//!
//! The supported family is closed under finite l-infinity sums and contains
//! the smooth norms `lp` (1 < p < inf) and Day-James `l_{p,q}` together with
//! the non-smooth primitive `l-infinity`. On this family the set of norming
//! functionals at a point is a polytope (a single point at smooth points), so
//! it is stored as a finite list of extreme functionals.

mod descriptor;

pub use descriptor::SpaceDescriptor;

use std::fmt;

use crate::error::{Error, Result};
use crate::tolerance::{CONJUGATE_TOL, TAU_SUP, TAU_TIE, TAU_ZERO};
use crate::vector::{check_dim, circle_point, dot};

/// The shape of a normed space. Obtain values through [`NormedSpace`]'s
/// validating constructors.
#[derive(Debug, Clone, PartialEq)]
pub enum SpaceKind {
    Lp { dim: usize, p: f64 },
    LInf { dim: usize },
    DayJames { p: f64, q: f64 },
    InfSum { parts: Vec<NormedSpace> },
}

/// A validated normed space on `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormedSpace {
    kind: SpaceKind,
    dim: usize,
}

fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent { value: p })
    }
}

impl NormedSpace {
    pub fn lp(dim: usize, p: f64) -> Result<Self> {
        if dim < 1 {
            return Err(Error::BadDimension(dim));
        }
        check_exponent(p)?;
        Ok(Self {
            kind: SpaceKind::Lp { dim, p },
            dim,
        })
    }

    /// The Euclidean space `l2^n`.
    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::lp(dim, 2.0)
    }

    pub fn linf(dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::BadDimension(dim));
        }
        Ok(Self {
            kind: SpaceKind::LInf { dim },
            dim,
        })
    }

    pub fn day_james(p: f64, q: f64) -> Result<Self> {
        check_exponent(p)?;
        check_exponent(q)?;
        Ok(Self {
            kind: SpaceKind::DayJames { p, q },
            dim: 2,
        })
    }

    pub fn inf_sum(parts: Vec<NormedSpace>) -> Result<Self> {
        if parts.len() < 2 {
            return Err(Error::EmptySum(parts.len()));
        }
        let dim = parts.iter().map(|s| s.dim).sum();
        Ok(Self {
            kind: SpaceKind::InfSum { parts },
            dim,
        })
    }

    pub fn kind(&self) -> &SpaceKind {
        &self.kind
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True for a Day-James plane with conjugate exponents.
    pub fn is_radon_candidate(&self) -> bool {
        match self.kind {
            SpaceKind::DayJames { p, q } => (1.0 / p + 1.0 / q - 1.0).abs() <= CONJUGATE_TOL,
            _ => false,
        }
    }

    /// True for `l2^2`, written either as `lp:2:2` or `dayjames:2:2`.
    pub fn is_euclidean_plane(&self) -> bool {
        match self.kind {
            SpaceKind::Lp { dim: 2, p } => p == 2.0,
            SpaceKind::DayJames { p, q } => p == 2.0 && q == 2.0,
            _ => false,
        }
    }

    /// Whether every nonzero point has a unique norming functional.
    pub fn is_smooth(&self) -> bool {
        match &self.kind {
            SpaceKind::Lp { .. } | SpaceKind::DayJames { .. } => true,
            SpaceKind::LInf { dim } => *dim == 1,
            SpaceKind::InfSum { .. } => false,
        }
    }

    /// Compact textual form, e.g. `sum(dayjames:3:1.5,linf:2)`.
    pub fn compact(&self) -> String {
        self.to_string()
    }

    /// Parses the compact textual form.
    pub fn parse_compact(s: &str) -> Result<Self> {
        descriptor::parse_compact(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: SpaceDescriptor = serde_json::from_str(text)?;
        validate_space(&d)
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        match &self.kind {
            SpaceKind::Lp { dim, p } => SpaceDescriptor::Lp { dim: *dim, p: *p },
            SpaceKind::LInf { dim } => SpaceDescriptor::Linf { dim: *dim },
            SpaceKind::DayJames { p, q } => SpaceDescriptor::DayJames { p: *p, q: *q },
            SpaceKind::InfSum { parts } => SpaceDescriptor::InfSum {
                parts: parts.iter().map(|s| s.descriptor()).collect(),
            },
        }
    }

    /// The parts of an l-infinity sum, `None` for any other space.
    pub fn parts(&self) -> Option<&[NormedSpace]> {
        match &self.kind {
            SpaceKind::InfSum { parts } => Some(parts),
            _ => None,
        }
    }

    /// Checked norm evaluation, see [`norm`].
    pub fn norm(&self, v: &[f64]) -> Result<f64> {
        norm(self, v)
    }

    /// Evaluates the norm. Panics in debug builds on a dimension mismatch;
    /// use [`norm`] for a checked version.
    pub fn norm_unchecked(&self, v: &[f64]) -> f64 {
        debug_assert_eq!(v.len(), self.dim);
        match &self.kind {
            SpaceKind::Lp { p, .. } => lp_norm(v, *p),
            SpaceKind::LInf { .. } => linf_norm(v),
            SpaceKind::DayJames { p, q } => lp_norm(v, day_james_exponent(v, *p, *q)),
            SpaceKind::InfSum { parts } => {
                let mut best = 0.0_f64;
                for (part, chunk) in split_parts(parts, v) {
                    best = best.max(part.norm_unchecked(chunk));
                }
                best
            }
        }
    }

    /// Same as [`support_set`] without the dimension and zero checks.
    fn extremes_into(&self, x: &[f64], out: &mut Vec<Vec<f64>>) {
        match &self.kind {
            SpaceKind::Lp { p, .. } => out.push(lp_gradient(x, *p)),
            SpaceKind::LInf { .. } => {
                let n = linf_norm(x);
                for (i, xi) in x.iter().enumerate() {
                    if xi.abs() >= (1.0 - TAU_TIE) * n {
                        let mut f = vec![0.0; x.len()];
                        f[i] = xi.signum();
                        out.push(f);
                    }
                }
            }
            SpaceKind::DayJames { p, q } => {
                let (a, b) = (x[0], x[1]);
                if a == 0.0 || b == 0.0 {
                    let fp = lp_gradient(x, *p);
                    let fq = lp_gradient(x, *q);
                    debug_assert!(
                        fp.iter().zip(&fq).all(|(u, v)| (u - v).abs() <= TAU_SUP),
                        "quadrant gradients disagree on an axis"
                    );
                    out.push(fp);
                } else {
                    out.push(lp_gradient(x, day_james_exponent(x, *p, *q)));
                }
            }
            SpaceKind::InfSum { parts } => {
                let total = self.norm_unchecked(x);
                let mut offset = 0;
                for (part, chunk) in split_parts(parts, x) {
                    if part.norm_unchecked(chunk) >= (1.0 - TAU_TIE) * total {
                        let mut local = Vec::new();
                        part.extremes_into(chunk, &mut local);
                        for f in local {
                            let mut g = vec![0.0; x.len()];
                            g[offset..offset + f.len()].copy_from_slice(&f);
                            out.push(g);
                        }
                    }
                    offset += part.dim;
                }
            }
        }
    }
}

impl fmt::Display for NormedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SpaceKind::Lp { dim, p } => write!(f, "lp:{dim}:{p}"),
            SpaceKind::LInf { dim } => write!(f, "linf:{dim}"),
            SpaceKind::DayJames { p, q } => write!(f, "dayjames:{p}:{q}"),
            SpaceKind::InfSum { parts } => {
                f.write_str("sum(")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{part}")?;
                }
                f.write_str(")")
            }
        }
    }
}

pub(crate) fn split_parts<'a>(
    parts: &'a [NormedSpace],
    v: &'a [f64],
) -> impl Iterator<Item = (&'a NormedSpace, &'a [f64])> + 'a {
    let mut offset = 0;
    parts.iter().map(move |part| {
        let chunk = &v[offset..offset + part.dim];
        offset += part.dim;
        (part, chunk)
    })
}

fn day_james_exponent(v: &[f64], p: f64, q: f64) -> f64 {
    if v[0] * v[1] >= 0.0 {
        p
    } else {
        q
    }
}

fn linf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn lp_norm(v: &[f64], p: f64) -> f64 {
    let m = linf_norm(v);
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    let s: f64 = v.iter().map(|x| (x.abs() / m).powf(p)).sum();
    m * s.powf(1.0 / p)
}

/// `sign(x_i) (|x_i| / |x|_p)^(p-1)`, the gradient of the lp norm at `x != 0`.
fn lp_gradient(x: &[f64], p: f64) -> Vec<f64> {
    let n = lp_norm(x, p);
    x.iter()
        .map(|xi| {
            if *xi == 0.0 {
                0.0
            } else {
                xi.signum() * (xi.abs() / n).powf(p - 1.0)
            }
        })
        .collect()
}

/// Builds a [`NormedSpace`] from a raw descriptor, checking exponents and dimensions.
pub fn validate_space(d: &SpaceDescriptor) -> Result<NormedSpace> {
    match d {
        SpaceDescriptor::Lp { dim, p } => NormedSpace::lp(*dim, *p),
        SpaceDescriptor::Linf { dim } => NormedSpace::linf(*dim),
        SpaceDescriptor::DayJames { p, q } => NormedSpace::day_james(*p, *q),
        SpaceDescriptor::InfSum { parts } => {
            let parts = parts.iter().map(validate_space).collect::<Result<Vec<_>>>()?;
            NormedSpace::inf_sum(parts)
        }
    }
}

/// The norm of `v` in `space`.
pub fn norm(space: &NormedSpace, v: &[f64]) -> Result<f64> {
    check_dim(space.dim(), v)?;
    Ok(space.norm_unchecked(v))
}

/// A linear functional in dual coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Functional(Vec<f64>);

impl Functional {
    pub fn new(coords: Vec<f64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn apply(&self, v: &[f64]) -> Result<f64> {
        functional_apply(self, v)
    }
}

/// Dual pairing `f(v)`.
pub fn functional_apply(f: &Functional, v: &[f64]) -> Result<f64> {
    check_dim(f.0.len(), v)?;
    Ok(dot(&f.0, v))
}

/// The norming functionals at a point, as the extreme points of their convex hull.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportSet {
    extremes: Vec<Functional>,
}

impl SupportSet {
    pub fn extremes(&self) -> &[Functional] {
        &self.extremes
    }

    pub fn is_singleton(&self) -> bool {
        self.extremes.len() == 1
    }

    /// `(min, max)` of `f(y)` over the extremes, i.e. over the whole support set.
    pub fn bounds(&self, y: &[f64]) -> (f64, f64) {
        self.extremes
            .iter()
            .map(|f| dot(&f.0, y))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(v), hi.max(v))
            })
    }

    /// Arithmetic mean of the extremes, a member of the support set.
    pub fn barycenter(&self) -> Functional {
        let n = self.extremes.len() as f64;
        let dim = self.extremes[0].0.len();
        let mut c = vec![0.0; dim];
        for f in &self.extremes {
            for (ci, fi) in c.iter_mut().zip(&f.0) {
                *ci += fi / n;
            }
        }
        Functional(c)
    }
}

/// Extreme points of the set of norming functionals at `x != 0`.
pub fn support_set(space: &NormedSpace, x: &[f64]) -> Result<SupportSet> {
    check_dim(space.dim(), x)?;
    if space.norm_unchecked(x) <= TAU_ZERO {
        return Err(Error::ZeroVector);
    }
    let mut raw = Vec::new();
    space.extremes_into(x, &mut raw);
    Ok(SupportSet {
        extremes: raw.into_iter().map(Functional).collect(),
    })
}

/// The unit vector of a plane in direction `theta`: `(cos, sin) / |(cos, sin)|`.
pub fn unit_vector_at_angle(plane: &NormedSpace, theta: f64) -> Result<[f64; 2]> {
    if plane.dim() != 2 {
        return Err(Error::NotAPlane(plane.dim()));
    }
    Ok(unit_at(plane, theta))
}

pub(crate) fn unit_at(plane: &NormedSpace, theta: f64) -> [f64; 2] {
    let c = circle_point(theta);
    let n = plane.norm_unchecked(&c);
    [c[0] / n, c[1] / n]
}
