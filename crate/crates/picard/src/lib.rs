//! Point counting, certification reports and surface spec files for Picard
//! rank bounds of degree-2 K3 surfaces, on top of `picard-core`.

pub mod cache;
pub mod certify;
pub mod counting;
pub mod error;
pub mod report;
pub mod spec;

pub use error::{Error, Result};
