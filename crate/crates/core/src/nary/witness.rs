use super::derivation::{DerivationSpace, LinearMap};
use crate::error::{check_len, Error, Result};
use crate::linalg::scalar::{Rational, Vector};
use crate::linalg::{solve, Matrix, Subspace};

/// `{D(x) : D ∈ Der}`, the values a derivation can take at `x`.
pub fn orbit_subspace(der: &DerivationSpace, x: &[Rational]) -> Result<Subspace> {
    let d = der.algebra_dim();
    check_len("orbit point", d, x.len())?;
    let images = der
        .basis_maps()
        .iter()
        .map(|b| b.apply(x))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(d, &images)
}

/// Certified derivation matching prescribed values at finitely many points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessTrace {
    /// `(x_i, y_i)` pairs with `witness(x_i) = y_i`.
    pub constraints: Vec<(Vector, Vector)>,
    /// Coordinates of the witness in the derivation-space basis.
    pub coefficients: Vector,
    pub witness: LinearMap,
}

impl WitnessTrace {
    /// Recomputes the witness from its coordinates and checks every constraint.
    pub fn replay(&self, der: &DerivationSpace) -> Result<bool> {
        if der.combine(&self.coefficients)? != self.witness {
            return Ok(false);
        }
        for (x, y) in &self.constraints {
            if &self.witness.apply(x)? != y {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Finds `D ∈ Der` with `D(x_i) = y_i` for all constraints by solving the
/// stacked system in derivation coordinates. Free coordinates are set to
/// zero, so the witness is reproducible.
pub fn multi_point_witness(der: &DerivationSpace, constraints: &[(Vector, Vector)]) -> Result<Option<WitnessTrace>> {
    let d = der.algebra_dim();
    let r = der.dim();
    let mut sys = Matrix::zeros(constraints.len() * d, r);
    let mut rhs = Vec::with_capacity(constraints.len() * d);
    for (ci, (x, y)) in constraints.iter().enumerate() {
        check_len("witness point", d, x.len())?;
        check_len("witness target", d, y.len())?;
        for (k, b) in der.basis_maps().iter().enumerate() {
            for (i, v) in b.apply(x)?.into_iter().enumerate() {
                sys[(ci * d + i, k)] = v;
            }
        }
        rhs.extend(y.iter().cloned());
    }
    let Some(coefficients) = solve(&sys, &rhs)? else {
        return Ok(None);
    };
    let witness = der.combine(&coefficients)?;
    let trace = WitnessTrace {
        constraints: constraints.to_vec(),
        coefficients,
        witness,
    };
    if !trace.replay(der)? {
        return Err(Error::Internal("witness failed to replay".into()));
    }
    Ok(Some(trace))
}

/// `true` when some derivation maps `x` to `y`.
pub fn single_point_feasible(der: &DerivationSpace, x: &[Rational], y: &[Rational]) -> Result<bool> {
    check_len("target", der.algebra_dim(), y.len())?;
    orbit_subspace(der, x)?.contains(y)
}

/// `x^⊥` under the standard dot product.
pub fn perp(x: &[Rational]) -> Subspace {
    let m = Matrix::from_rows(x.len(), vec![x.to_vec()]).expect("one row");
    Subspace::nullspace(&m)
}
