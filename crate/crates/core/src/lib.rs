//! Exact classification of projectively flat vector bundles and flat matrix
//! bundles on tori, and the isomorphism problem for rational noncommutative
//! tori.

pub mod error;
pub mod linalg;

pub use error::{Error, Result};
pub mod autofactor;
pub mod bundles;
pub mod cohomology;
pub mod io;
pub mod nctorus;
pub mod projrep;
