//! Birkhoff-James orthogonality in finite-dimensional real normed spaces.
//!
//! The crate evaluates norms and norming functionals for a composable family
//! of spaces (`lp`, `l-infinity`, Day-James planes and their l-infinity sums),
//! decides orthogonality and angle relations, builds norm-preserving
//! homogeneous orthogonality preservers from the Euclidean plane onto smooth
//! Radon planes (and their sums with l-infinity blocks), and provides the
//! sampling checks that certify these constructions numerically.

pub mod analysis;
pub mod error;
pub mod orthogonality;
pub mod preserver;
pub mod sampling;
pub mod search;
pub mod space;
pub mod tolerance;
pub mod vector;

pub use analysis::{
    euclidean_section_search, parallelogram_defect, radon_defect, sample_orthograph, smoothness_probe,
    sum_acute_equivalence_check,
};
pub use error::{Error, Result};
pub use orthogonality::{
    classify_angle, directional_bounds, is_bj_orthogonal, is_bj_orthogonal_oracle,
    is_mutually_orthogonal, one_sided_acute_oracle, oracle_min_over_line, AngleRelation, AngleTag,
};
pub use preserver::{
    apply_inverse, apply_preserver, build_preserver, compose_inf_sum, preserver_for_target, solve_eta,
    verify_preserver, EtaTable, PreserverMap, VerificationReport,
};
pub use space::{
    functional_apply, norm, support_set, unit_vector_at_angle, validate_space, Functional,
    NormedSpace, SpaceDescriptor, SpaceKind, SupportSet,
};
