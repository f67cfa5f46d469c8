//! Exact construction of one-point AG codes on the curves `y^2 = x^p - x`
//! and comparison of the curve automorphism group with the permutation
//! automorphism group of the code.

pub mod audit;
pub mod autcode;
pub mod code;
pub mod curve;
pub mod error;
pub mod gf;
pub mod group;
pub mod perm;
pub mod rr;

pub use error::{Error, Result};
