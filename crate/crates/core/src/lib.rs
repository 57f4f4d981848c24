//! Exact arithmetic behind single-prime Picard rank bounds for degree-2 K3
//! surfaces `w^2 = f6(x, y, z)`: finite fields, homogeneous forms, point
//! counts, Frobenius characteristic polynomials, tritangent geometry, the
//! second-order lifting obstruction and integer lattices.
#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod count;
pub mod error;
pub mod ffield;
pub mod forms;
pub mod geom;
pub mod lattice;
pub mod linalg;
pub mod obstruct;
pub mod zeta;
pub mod zpoly;

#[cfg(test)]
mod fixtures;

pub use error::{Error, Result};
