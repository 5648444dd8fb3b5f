use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{check_len, Error, Result};
use crate::linalg::scalar::{self, Rational, Vector};
use crate::linalg::Matrix;

/// Evaluates the product of basis elements given by (0-based) indices in any
/// order. Implemented by stored algebras and by formula-driven evaluators so
/// both can go through the same structural checks.
pub trait BasisProduct {
    fn arity(&self) -> usize;
    fn dim(&self) -> usize;
    fn basis_product(&self, indices: &[usize]) -> Vector;
}

/// Sorts `indices` and returns the parity of the permutation used, or `None`
/// if an index repeats.
pub fn sort_with_sign(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    // insertion sort; arity is small
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, odd))
    }
}

/// Finite-dimensional anticommutative n-ary algebra over the rationals.
///
/// Structure constants live only on strictly increasing index tuples; all
/// other products follow from the permutation sign, and absent tuples are
/// zero. Indices are 0-based here and 1-based in the JSON format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaryAlgebra {
    arity: usize,
    dim: usize,
    table: BTreeMap<Vec<usize>, Vector>,
}

impl NaryAlgebra {
    pub fn new(arity: usize, dim: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::Domain(format!("arity must be at least 2, got {arity}")));
        }
        Ok(Self {
            arity,
            dim,
            table: BTreeMap::new(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `[e_{t1}, …, e_{tn}] = value` for a strictly increasing tuple.
    /// A zero value removes the entry.
    pub fn set_product(&mut self, tuple: &[usize], value: Vector) -> Result<()> {
        check_len("bracket arguments", self.arity, tuple.len())?;
        check_len("bracket value", self.dim, value.len())?;
        if tuple.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!(
                "structure constants are stored on strictly increasing tuples, got {tuple:?}"
            )));
        }
        if let Some(&i) = tuple.iter().find(|&&i| i >= self.dim) {
            return Err(Error::Domain(format!("basis index {i} out of range")));
        }
        if scalar::is_zero(&value) {
            self.table.remove(tuple);
        } else {
            self.table.insert(tuple.to_vec(), value);
        }
        Ok(())
    }

    /// Stored nonzero products, keyed by increasing tuples.
    pub fn products(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.table.iter()
    }

    /// Every strictly increasing `arity`-tuple of basis indices.
    pub fn increasing_tuples(&self) -> Vec<Vec<usize>> {
        increasing_tuples(self.dim, self.arity)
    }

    /// Multilinear antisymmetric extension of the table:
    /// `[v_1, …, v_n] = Σ_T det(v_k[t_j]) · [e_T]` over stored tuples `T`.
    pub fn bracket(&self, args: &[Vector]) -> Result<Vector> {
        check_len("bracket arguments", self.arity, args.len())?;
        for a in args {
            check_len("bracket argument", self.dim, a.len())?;
        }
        let mut out = scalar::zeros(self.dim);
        for (tuple, value) in &self.table {
            // rows: arguments; cols: the tuple's coordinates
            let mut m = Matrix::zeros(self.arity, self.arity);
            let mut any_zero_row = false;
            for (r, a) in args.iter().enumerate() {
                let mut row_zero = true;
                for (c, &t) in tuple.iter().enumerate() {
                    if !a[t].is_zero() {
                        row_zero = false;
                        m[(r, c)] = a[t].clone();
                    }
                }
                any_zero_row |= row_zero;
            }
            if any_zero_row {
                continue;
            }
            let det = m.det()?;
            if det.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(value) {
                *o += &det * v;
            }
        }
        Ok(out)
    }

    /// Direct sum `A1 ⊕ A2`: basis of `A2` is shifted after `A1`, and every
    /// bracket mixing the two blocks is zero.
    pub fn direct_sum(&self, other: &NaryAlgebra) -> Result<NaryAlgebra> {
        if self.arity != other.arity {
            return Err(Error::DimensionMismatch {
                context: "direct sum arity",
                expected: self.arity,
                found: other.arity,
            });
        }
        let dim = self.dim + other.dim;
        let mut out = NaryAlgebra::new(self.arity, dim)?;
        for (t, v) in &self.table {
            let mut value = v.clone();
            value.resize(dim, Rational::zero());
            out.table.insert(t.clone(), value);
        }
        for (t, v) in &other.table {
            let shifted: Vec<usize> = t.iter().map(|i| i + self.dim).collect();
            let mut value = scalar::zeros(self.dim);
            value.extend(v.iter().cloned());
            out.table.insert(shifted, value);
        }
        Ok(out)
    }
}

impl BasisProduct for NaryAlgebra {
    fn arity(&self) -> usize {
        self.arity
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn basis_product(&self, indices: &[usize]) -> Vector {
        let Some((sorted, odd)) = sort_with_sign(indices) else {
            return scalar::zeros(self.dim);
        };
        match self.table.get(&sorted) {
            Some(v) if odd => v.iter().map(|x| -x).collect(),
            Some(v) => v.clone(),
            None => scalar::zeros(self.dim),
        }
    }
}

/// All strictly increasing `k`-subsets of `0..n`, in lexicographic order.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // rightmost slot that can still advance
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The all-zero algebra of the given shape.
pub fn abelian(arity: usize, dim: usize) -> Result<NaryAlgebra> {
    NaryAlgebra::new(arity, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{int, unit};

    fn small() -> NaryAlgebra {
        // [e1,e2,e3] = e4 on a 4-dim ternary algebra
        let mut a = NaryAlgebra::new(3, 4).unwrap();
        a.set_product(&[0, 1, 2], unit(4, 3)).unwrap();
        a
    }

    #[test]
    fn tuples() {
        assert_eq!(increasing_tuples(4, 2).len(), 6);
        assert_eq!(increasing_tuples(4, 4), vec![vec![0, 1, 2, 3]]);
        assert_eq!(increasing_tuples(9, 8).len(), 9);
        assert_eq!(increasing_tuples(3, 1), vec![vec![0], vec![1], vec![2]]);
        assert!(increasing_tuples(2, 3).is_empty());
    }

    #[test]
    fn signs() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 0, 2]), Some((vec![0, 1, 2], true)));
        assert_eq!(sort_with_sign(&[1, 1, 2]), None);
    }

    #[test]
    fn bracket_on_vectors() {
        let a = small();
        let e = |i| unit(4, i);
        assert_eq!(a.bracket(&[e(0), e(1), e(2)]).unwrap(), e(3));
        assert_eq!(a.bracket(&[e(1), e(0), e(2)]).unwrap(), scalar::scale(&int(-1), &e(3)));
        assert_eq!(a.bracket(&[e(1), e(1), e(2)]).unwrap(), scalar::zeros(4));
        // (e1 + 2e2) with e2, e3 -> e4
        let v = scalar::add(&e(0), &scalar::scale(&int(2), &e(1)));
        assert_eq!(a.bracket(&[v, e(1), e(2)]).unwrap(), e(3));
    }

    #[test]
    fn bad_shapes() {
        let mut a = small();
        assert!(a.bracket(&[unit(4, 0), unit(4, 1)]).is_err());
        assert!(a.bracket(&[unit(4, 0), unit(4, 1), unit(3, 2)]).is_err());
        assert!(a.set_product(&[1, 0, 2], unit(4, 3)).is_err());
        assert!(a.set_product(&[0, 1, 4], unit(4, 3)).is_err());
        assert!(NaryAlgebra::new(1, 3).is_err());
    }

    #[test]
    fn direct_sum_blocks() {
        let a = small();
        let s = a.direct_sum(&a).unwrap();
        assert_eq!(s.arity(), 3);
        assert_eq!(s.dim(), 8);
        let e = |i| unit(8, i);
        assert_eq!(s.bracket(&[e(4), e(5), e(6)]).unwrap(), e(7));
        assert_eq!(s.bracket(&[e(0), e(1), e(4)]).unwrap(), scalar::zeros(8));
        let b = NaryAlgebra::new(2, 3).unwrap();
        assert!(a.direct_sum(&b).is_err());
    }
}
