//! Bilinear cocycles on `ℤⁿ` and their clock-and-shift projective representations.

mod cocycle;
pub mod cyclotomic;
mod rep;

pub use cocycle::{
    bicharacter_of, cohomologous, radical, witness_holds, Bicharacter, BilinearCocycle, QuadraticPhase,
};
pub use rep::{
    clock_shift, commutant_dim, direct_sum, equivalent, heisenberg_rep, intertwiner, normal_form_blocks,
    Intertwiner, ProjectiveRep, RepRecord,
};
