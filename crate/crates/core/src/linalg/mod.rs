//! Exact linear algebra over the rationals.

pub mod matrix;
pub mod scalar;
pub mod subspace;

pub use matrix::{rref, solve, Matrix, Rref};
pub use scalar::{Rational, Vector};
pub use subspace::Subspace;
