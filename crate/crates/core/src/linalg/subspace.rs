use num_traits::Zero;

use super::matrix::{rref, Matrix};
use super::scalar::{self, Rational, Vector};
use crate::error::{check_len, Result};

/// Linear subspace of `Q^ambient`, stored by its canonical basis: the nonzero
/// rows of the reduced row-echelon form of any spanning set. Equal subspaces
/// therefore have identical bases, and `==` is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Self {
        let r = rref(m);
        let rows = r.reduced.row_vectors().into_iter().take(r.rank).collect();
        Self {
            ambient: m.cols(),
            basis: Matrix::from_rows(m.cols(), rows).expect("rows taken from a matrix"),
            pivots: r.pivot_cols,
        }
    }

    pub fn span(ambient: usize, vectors: &[Vector]) -> Result<Self> {
        let m = Matrix::from_rows(ambient, vectors.to_vec())?;
        Ok(Self::row_space(&m))
    }

    /// Kernel `{v : m·v = 0}`.
    pub fn nullspace(m: &Matrix) -> Self {
        let n = m.cols();
        let r = rref(m);
        let mut is_pivot = vec![false; n];
        for &c in &r.pivot_cols {
            is_pivot[c] = true;
        }
        let gens: Vec<Vector> = (0..n)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = scalar::zeros(n);
                v[f] = scalar::int(1);
                for (row, &pc) in r.pivot_cols.iter().enumerate() {
                    v[pc] = -r.reduced[(row, f)].clone();
                }
                v
            })
            .collect();
        Self::span(n, &gens).expect("generators have ambient length")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// Exact membership test.
    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        check_len("subspace membership", self.ambient, v.len())?;
        let mut rem = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            if rem[p].is_zero() {
                continue;
            }
            let k = rem[p].clone();
            for (x, b) in rem.iter_mut().zip(self.basis.row(r)) {
                *x -= &k * b;
            }
        }
        Ok(scalar::is_zero(&rem))
    }

    /// Orthogonal complement under the standard dot product: every `w` with
    /// `w·b = 0` for all basis rows `b`.
    pub fn annihilator(&self) -> Self {
        Self::nullspace(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        check_len("subspace intersection", self.ambient, other.ambient)?;
        let eqs = self.annihilator().basis.vstack(&other.annihilator().basis)?;
        Ok(Self::nullspace(&eqs))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        check_len("subspace sum", self.ambient, other.ambient)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        check_len("subspace inclusion", self.ambient, other.ambient)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, unit};
    use crate::Error;

    #[test]
    fn nullspace_examples() {
        assert_eq!(Subspace::nullspace(&Matrix::zeros(2, 3)).dim(), 3);
        assert_eq!(Subspace::nullspace(&Matrix::identity(5)).dim(), 0);
        let k = Subspace::nullspace(&Matrix::from_i64(1, 2, &[1, 1]).unwrap());
        assert_eq!(k.dim(), 1);
        assert_eq!(k, Subspace::span(2, &[vec![int(1), int(-1)]]).unwrap());
    }

    #[test]
    fn membership_and_intersection() {
        let e = |i| unit(3, i);
        let s = Subspace::span(3, &[e(0)]).unwrap();
        assert!(s.contains(&e(0)).unwrap());
        assert!(!s.contains(&e(1)).unwrap());

        let a = Subspace::span(3, &[e(0), e(1)]).unwrap();
        let b = Subspace::span(3, &[e(1), e(2)]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subspace::span(3, &[e(1)]).unwrap());
        assert_eq!(Subspace::full(8).dim(), 8);
    }

    #[test]
    fn canonical_basis() {
        let a = Subspace::span(3, &[vec![int(1), int(1), int(0)], vec![int(1), int(-1), int(0)]]).unwrap();
        let b = Subspace::span(3, &[unit(3, 1), vec![int(2), int(0), int(0)]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn ambient_mismatch() {
        let a = Subspace::full(3);
        let b = Subspace::full(4);
        assert!(matches!(a.intersect(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.contains(&unit(4, 0)).is_err());
    }
}
