//! Exact scalar arithmetic and dense linear algebra.

mod field;
mod matrix;

pub use field::{Field, Scalar, MAX_MODULUS};
pub use matrix::{Matrix, Rref};
