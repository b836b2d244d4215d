//! Exact finite combinatorics for homological mirror symmetry of punctured
//! surfaces against stacky nodal curves.

pub mod aside;
pub mod bside;
pub mod cli;
pub mod error;
pub mod gluing;
pub mod homology;
pub mod linalg;
pub mod mirror;
pub mod perm;
pub mod quiver;
pub mod surface;
pub mod sweep;

pub use error::{Error, Result};
