//! Exact integer and rational matrix algebra.

pub mod lattice;
pub mod matrix;
pub mod smith;
pub mod symplectic;
pub mod unimodular;

pub use lattice::{hermite_column_form, lattice_kernel_mod, LatticeBasis};
pub use matrix::{frac, int, rat, IntMatrix, Matrix, RatMatrix, Scalar, SkewRatForm};
pub use smith::{smith_normal_form, SmithForm};
pub use symplectic::{symplectic_normal_form, SymplecticNF};
pub use unimodular::{lift_special_linear, lift_unimodular, mod_inverse, unimodular_sample, unimodular_sample_with};
