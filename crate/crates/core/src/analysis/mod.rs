//! Checks of the geometric hypotheses: Radon symmetry, smoothness, the
//! parallelogram law and Euclidean sections, the acute-angle case analysis on
//! l-infinity sums, oracle cross-validation and orthograph sampling.

mod crosscheck;
mod orthograph;
mod radon;
mod sections;
mod smooth;
mod sum_acute;

pub use crosscheck::{oracle_agreement, structural_invariants, InvariantReport, OracleAgreementReport, PropertyCount};
pub use orthograph::{sample_orthograph, unit_circle, Directions, Orthograph};
pub use radon::{orthogonal_partner, radon_defect, RadonReport, RadonRow, MIN_RADON_GRID};
pub use sections::{
    euclidean_section_search, section_candidates, SectionCandidate, SectionReport, MIN_GRAM, SECTION_TOL,
};
pub use smooth::{parallelogram_defect, quotient_gap, smoothness_probe, SmoothnessReport, PROBE_GAP, PROBE_STEP};
pub use sum_acute::{sum_acute_equivalence_check, sum_trichotomy, SumAcuteReport, SumCase, TrichotomyOutcome};
