//! Exact root-locus analysis on the projective plane.
//!
//! A transfer function `n(s)/d(s)` together with the gain `k` defines a
//! pencil of plane curves. Their real common zeros, closed in the
//! projective plane, give the locus including its points at infinity.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod pencil;
pub mod pjrl;
pub mod poly;
pub mod solver;

pub use error::{Error, Result};
