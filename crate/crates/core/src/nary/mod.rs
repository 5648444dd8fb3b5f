//! Anticommutative n-ary algebras: brackets, identity checks, derivation
//! spaces, witness solvers and local-derivation bounds.

pub mod algebra;
pub mod derivation;
pub mod identities;
pub mod json;
pub mod local;
pub mod witness;

pub use algebra::{BasisProduct, NaryAlgebra};
pub use derivation::{is_derivation, DerivationSpace, LinearMap};
pub use identities::{check_anticommutativity, check_filippov};
pub use local::{default_probes, is_local_derivation, locder_upper_bound, LocalVerdict, ProbeVector};
pub use witness::{multi_point_witness, orbit_subspace, WitnessTrace};
