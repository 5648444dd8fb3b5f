use serde::Serialize;

use super::algebra::{BasisProduct, NaryAlgebra};
use crate::error::{check_len, Error, Result};
use crate::linalg::scalar::{self, Rational, Vector};
use crate::linalg::{Matrix, Subspace};

/// Linear endomorphism given by a square matrix acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Result<Self> {
        check_len("linear map (square matrix)", matrix.rows(), matrix.cols())?;
        Ok(Self { matrix })
    }

    pub fn zero(d: usize) -> Self {
        Self {
            matrix: Matrix::zeros(d, d),
        }
    }

    pub fn identity(d: usize) -> Self {
        Self {
            matrix: Matrix::identity(d),
        }
    }

    /// Inverse of [`LinearMap::flatten`] (row-major `d²` entries).
    pub fn from_flat(d: usize, entries: &[Rational]) -> Result<Self> {
        Ok(Self {
            matrix: Matrix::from_entries(d, d, entries.to_vec())?,
        })
    }

    /// `Δ_ij = e_ij − e_ji` (0-based `i`, `j`).
    pub fn elementary_antisymmetric(d: usize, i: usize, j: usize) -> Self {
        let mut m = Matrix::zeros(d, d);
        m[(i, j)] += scalar::int(1);
        m[(j, i)] -= scalar::int(1);
        Self { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn flatten(&self) -> Vector {
        self.matrix.entries().to_vec()
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(Self {
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(Self {
            matrix: self.matrix.add(&other.matrix)?,
        })
    }

    pub fn sub(&self, other: &LinearMap) -> Result<LinearMap> {
        Ok(Self {
            matrix: self.matrix.sub(&other.matrix)?,
        })
    }

    pub fn scale(&self, k: &Rational) -> LinearMap {
        Self {
            matrix: self.matrix.scale(k),
        }
    }

    pub fn transpose(&self) -> LinearMap {
        Self {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.matrix.is_antisymmetric()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Basis tuple on which the Leibniz rule fails, with both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeibnizViolation {
    /// 1-based increasing tuple.
    pub tuple: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// Checks `L[e_a1,…,e_an] = Σ_k [e_a1,…,L e_ak,…,e_an]` on every increasing
/// tuple. Multilinearity and antisymmetry make these tuples sufficient.
pub fn derivation_violations(algebra: &NaryAlgebra, map: &LinearMap) -> Result<Vec<LeibnizViolation>> {
    let d = algebra.dim();
    check_len("derivation candidate", d, map.dim())?;
    let m = map.matrix();
    let mut out = Vec::new();
    for tuple in algebra.increasing_tuples() {
        let lhs = map.apply(&algebra.basis_product(&tuple))?;
        let mut rhs = scalar::zeros(d);
        for slot in 0..tuple.len() {
            let col = tuple[slot];
            let mut args = tuple.clone();
            for i in 0..d {
                let c = &m[(i, col)];
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                args[slot] = i;
                let p = algebra.basis_product(&args);
                for (r, x) in rhs.iter_mut().zip(&p) {
                    *r += c * x;
                }
            }
        }
        if lhs != rhs {
            out.push(LeibnizViolation {
                tuple: tuple.iter().map(|k| k + 1).collect(),
                lhs: scalar::vector_to_strings(&lhs),
                rhs: scalar::vector_to_strings(&rhs),
            });
        }
    }
    Ok(out)
}

pub fn is_derivation(algebra: &NaryAlgebra, map: &LinearMap) -> Result<bool> {
    Ok(derivation_violations(algebra, map)?.is_empty())
}

/// Coefficient matrix of the Leibniz system. Unknowns are the `d²` entries of
/// `D`, flattened row-major (`D[i][j]` at `i·d + j`); there is one equation per
/// increasing tuple and output coordinate.
pub fn leibniz_system(algebra: &NaryAlgebra) -> Matrix {
    let d = algebra.dim();
    let tuples = algebra.increasing_tuples();
    let mut sys = Matrix::zeros(tuples.len() * d, d * d);
    for (ti, tuple) in tuples.iter().enumerate() {
        let base = ti * d;
        // (D v)_k = Σ_i D[k][i] v_i
        let v = algebra.basis_product(tuple);
        for k in 0..d {
            for (i, x) in v.iter().enumerate() {
                if !num_traits::Zero::is_zero(x) {
                    sys[(base + k, k * d + i)] += x;
                }
            }
        }
        // − Σ_slot Σ_i D[i][a_slot] [.., e_i, ..]
        for slot in 0..tuple.len() {
            let col = tuple[slot];
            let mut args = tuple.clone();
            for i in 0..d {
                args[slot] = i;
                let p = algebra.basis_product(&args);
                for (k, x) in p.iter().enumerate() {
                    if !num_traits::Zero::is_zero(x) {
                        sys[(base + k, i * d + col)] -= x;
                    }
                }
            }
        }
    }
    sys
}

/// `Der(A)`: the exact kernel of the Leibniz system, with its canonical basis
/// unflattened into maps.
#[derive(Clone, Debug)]
pub struct DerivationSpace {
    algebra: NaryAlgebra,
    space: Subspace,
    basis_maps: Vec<LinearMap>,
}

impl DerivationSpace {
    pub fn compute(algebra: &NaryAlgebra) -> Self {
        let space = Subspace::nullspace(&leibniz_system(algebra));
        Self::from_space(algebra, space).expect("kernel vectors have length d²")
    }

    /// Wraps a precomputed subspace of flattened matrices. Every basis map must
    /// be a derivation.
    pub fn from_space(algebra: &NaryAlgebra, space: Subspace) -> Result<Self> {
        let d = algebra.dim();
        check_len("derivation space ambient", d * d, space.ambient_dim())?;
        let basis_maps = space
            .basis_vectors()
            .iter()
            .map(|v| LinearMap::from_flat(d, v))
            .collect::<Result<Vec<_>>>()?;
        for (k, b) in basis_maps.iter().enumerate() {
            if !is_derivation(algebra, b)? {
                return Err(Error::Internal(format!("basis map {k} is not a derivation")));
            }
        }
        Ok(Self {
            algebra: algebra.clone(),
            space,
            basis_maps,
        })
    }

    pub fn algebra(&self) -> &NaryAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis_maps(&self) -> &[LinearMap] {
        &self.basis_maps
    }

    pub fn dim(&self) -> usize {
        self.basis_maps.len()
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn contains(&self, map: &LinearMap) -> Result<bool> {
        self.space.contains(&map.flatten())
    }

    /// `Σ c_k B_k`.
    pub fn combine(&self, coefficients: &[Rational]) -> Result<LinearMap> {
        check_len("derivation coordinates", self.dim(), coefficients.len())?;
        let d = self.algebra.dim();
        let mut acc = Matrix::zeros(d, d);
        for (c, b) in coefficients.iter().zip(&self.basis_maps) {
            if num_traits::Zero::is_zero(c) {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    let v = &b.matrix()[(i, j)];
                    if !num_traits::Zero::is_zero(v) {
                        acc[(i, j)] += c * v;
                    }
                }
            }
        }
        LinearMap::new(acc)
    }
}
