//! Exact rational computations for real moment-angle complexes with
//! permutation group actions: fixed points, orbit categories, coefficient
//! systems, injective resolutions and Bredon cohomology.

pub mod action;
pub mod bredon;
pub mod coeffsys;
pub mod doman;
pub mod error;
pub mod groups;
pub mod orbitcat;
pub mod qlinalg;
pub mod simplicial;
pub mod zcomplex;

pub use error::{Error, Result};
