//! Exact derivations, local derivations and certified witnesses for the
//! simple Filippov algebras `A_m` and the ternary Malcev algebra `M8`.

pub mod cli;
pub mod error;
pub mod filippov;
pub mod linalg;
pub mod nary;
pub mod octonion;
pub mod sampling;

pub use error::{Error, Result};
