//! Exact computation of Hilbert-point weights, generalized Futaki
//! invariants and Chow forms for projective schemes cut out by homogeneous
//! ideals with rational coefficients.
//!
//! Everything is computed over the rationals; there is no floating point
//! anywhere in the crate.

pub mod error;
pub mod cgkm;
pub mod exact;
pub mod graded;
pub mod futaki;
pub mod io;
pub mod koszul;
pub mod weight;

pub use error::{Error, Result};
