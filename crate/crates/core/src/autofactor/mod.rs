//! Factors of automorphy with generalized-permutation values and their clutching data.

mod clutching;
mod factor;
mod genperm;
mod phase;

pub use clutching::{
    clutching_omega, clutching_twist, default_samples, det_winding, loop_samples_csv, min_samples,
    projective_defect, winding_number, DEFAULT_TOLERANCE,
};
pub use factor::{
    check_cocycle, cocycle_holds, det_cocycle, factor_from, factor_records, mumford_c1, mumford_expression,
    rieffel_n, AutomorphyFactor, CocycleReport, FactorOfAutomorphy, FactorRecord, ScalarFactor,
};
pub use genperm::{GenPermPhaseMatrix, GenPermText};
pub use phase::{AffineFunction, AffinePhase, PhaseText};
