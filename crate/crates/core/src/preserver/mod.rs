//! Norm-preserving homogeneous orthogonality preservers.
//!
//! A [`PreserverMap`] sends the Euclidean plane onto a smooth Radon plane
//! through the tabulated angle map `eta`, or acts componentwise on an
//! l-infinity sum of such maps.

mod eta;
mod verify;

use std::f64::consts::FRAC_PI_2;

pub use eta::{solve_eta, EtaTable, DEFAULT_GRID, MIN_GRID, NODE_MARGIN};
pub use verify::{verify_preserver, VerificationReport, VerifyThresholds};

use crate::error::{Error, Result};
use crate::space::{split_parts, unit_at, NormedSpace};
use crate::vector::check_dim;

#[derive(Debug, Clone, PartialEq)]
pub enum PreserverMap {
    /// `l2^2` onto a smooth Radon plane.
    RadonPlane { eta: EtaTable, source: NormedSpace },
    /// Componentwise action on l-infinity sums.
    Sum {
        parts: Vec<PreserverMap>,
        source: NormedSpace,
        target: NormedSpace,
    },
    Identity { space: NormedSpace },
}

/// Tabulates `eta` for `plane` on `grid_size + 1` nodes.
pub fn build_preserver(plane: &NormedSpace, grid_size: usize) -> Result<PreserverMap> {
    if plane.dim() != 2 {
        return Err(Error::NotAPlane(plane.dim()));
    }
    if !(plane.is_radon_candidate() || plane.is_euclidean_plane()) {
        return Err(Error::NotRadonPlane(plane.compact()));
    }
    Ok(PreserverMap::RadonPlane {
        eta: EtaTable::build(plane, grid_size)?,
        source: NormedSpace::euclidean(2)?,
    })
}

/// A map from `l2^2` onto a radon plane built from an explicit table.
pub fn preserver_from_table(eta: EtaTable) -> Result<PreserverMap> {
    Ok(PreserverMap::RadonPlane { eta, source: NormedSpace::euclidean(2)? })
}

/// The l-infinity sum `R(x, y) = (Sx, Ty)` of at least two maps.
pub fn compose_inf_sum(parts: Vec<PreserverMap>) -> Result<PreserverMap> {
    if parts.len() < 2 {
        return Err(Error::EmptyParts(parts.len()));
    }
    let source = NormedSpace::inf_sum(parts.iter().map(|m| m.source().clone()).collect())?;
    let target = NormedSpace::inf_sum(parts.iter().map(|m| m.target().clone()).collect())?;
    Ok(PreserverMap::Sum { parts, source, target })
}

/// A preserver onto `target`: Day-James Radon planes get a tabulated map,
/// sums are handled part by part and every other space gets the identity.
pub fn preserver_for_target(target: &NormedSpace, grid_size: usize) -> Result<PreserverMap> {
    if target.is_radon_candidate() && !target.is_euclidean_plane() {
        return build_preserver(target, grid_size);
    }
    if let Some(parts) = target.parts() {
        let maps = parts
            .iter()
            .map(|p| preserver_for_target(p, grid_size))
            .collect::<Result<Vec<_>>>()?;
        return compose_inf_sum(maps);
    }
    Ok(PreserverMap::Identity { space: target.clone() })
}

pub fn apply_preserver(map: &PreserverMap, v: &[f64]) -> Result<Vec<f64>> {
    map.apply(v)
}

pub fn apply_inverse(map: &PreserverMap, w: &[f64]) -> Result<Vec<f64>> {
    map.apply_inverse(w)
}

/// `true` when `v` lies in the open lower half plane or on the negative axis.
fn lower_half(v: &[f64]) -> bool {
    v[1] < 0.0 || (v[1] == 0.0 && v[0] < 0.0)
}

fn negate(v: Vec<f64>) -> Vec<f64> {
    v.into_iter().map(|x| -x).collect()
}

impl PreserverMap {
    pub fn source(&self) -> &NormedSpace {
        match self {
            PreserverMap::RadonPlane { source, .. } => source,
            PreserverMap::Sum { source, .. } => source,
            PreserverMap::Identity { space } => space,
        }
    }

    pub fn target(&self) -> &NormedSpace {
        match self {
            PreserverMap::RadonPlane { eta, .. } => eta.plane(),
            PreserverMap::Sum { target, .. } => target,
            PreserverMap::Identity { space } => space,
        }
    }

    /// Short human-readable description, e.g. `sum(radon(dayjames:3:1.5),id(linf:2))`.
    pub fn describe(&self) -> String {
        match self {
            PreserverMap::RadonPlane { eta, .. } => format!("radon({})", eta.plane()),
            PreserverMap::Identity { space } => format!("id({space})"),
            PreserverMap::Sum { parts, .. } => {
                let inner: Vec<String> = parts.iter().map(|p| p.describe()).collect();
                format!("sum({})", inner.join(","))
            }
        }
    }

    /// Every tabulated `eta` in the map, in part order.
    pub fn eta_tables(&self) -> Vec<&EtaTable> {
        match self {
            PreserverMap::RadonPlane { eta, .. } => vec![eta],
            PreserverMap::Identity { .. } => Vec::new(),
            PreserverMap::Sum { parts, .. } => parts.iter().flat_map(|p| p.eta_tables()).collect(),
        }
    }

    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.source().dim(), v)?;
        match self {
            PreserverMap::Identity { .. } => Ok(v.to_vec()),
            PreserverMap::Sum { parts, source, .. } => {
                let mut out = Vec::with_capacity(v.len());
                for (map, chunk) in parts.iter().zip(split_parts(source.parts().unwrap_or(&[]), v)) {
                    out.extend(map.apply(chunk.1)?);
                }
                Ok(out)
            }
            PreserverMap::RadonPlane { eta, .. } => Ok(radon_apply(eta, v)),
        }
    }

    pub fn apply_inverse(&self, w: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.target().dim(), w)?;
        match self {
            PreserverMap::Identity { .. } => Ok(w.to_vec()),
            PreserverMap::Sum { parts, target, .. } => {
                let mut out = Vec::with_capacity(w.len());
                for (map, chunk) in parts.iter().zip(split_parts(target.parts().unwrap_or(&[]), w)) {
                    out.extend(map.apply_inverse(chunk.1)?);
                }
                Ok(out)
            }
            PreserverMap::RadonPlane { eta, .. } => radon_inverse(eta, w),
        }
    }
}

/// `T~(v) = |v|_2 T(v / |v|_2)`, with the lower half plane handled by oddness.
fn radon_apply(eta: &EtaTable, v: &[f64]) -> Vec<f64> {
    if v[0] == 0.0 && v[1] == 0.0 {
        return vec![0.0, 0.0];
    }
    if lower_half(v) {
        return negate(radon_apply(eta, &[-v[0], -v[1]]));
    }
    let r = v[0].hypot(v[1]);
    let theta = v[1].atan2(v[0]);
    let dir = if theta <= FRAC_PI_2 { theta } else { eta.eta(theta - FRAC_PI_2) };
    let u = unit_at(eta.plane(), dir);
    vec![r * u[0], r * u[1]]
}

fn radon_inverse(eta: &EtaTable, w: &[f64]) -> Result<Vec<f64>> {
    if w[0] == 0.0 && w[1] == 0.0 {
        return Ok(vec![0.0, 0.0]);
    }
    if lower_half(w) {
        return Ok(negate(radon_inverse(eta, &[-w[0], -w[1]])?));
    }
    let r = eta.plane().norm_unchecked(w);
    let phi = w[1].atan2(w[0]);
    let theta = if phi <= FRAC_PI_2 { phi } else { FRAC_PI_2 + eta.eta_inverse(phi)? };
    Ok(vec![r * theta.cos(), r * theta.sin()])
}
