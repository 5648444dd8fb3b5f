use serde::Serialize;

use super::algebra::{increasing_tuples, BasisProduct, NaryAlgebra};
use crate::error::Result;
use crate::linalg::scalar::{self, unit, Vector};

/// A transposition of arguments that did not negate the product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnticommutativityViolation {
    /// Increasing tuple (1-based).
    pub tuple: Vec<usize>,
    /// Swapped argument positions (0-based).
    pub swap: (usize, usize),
    pub original: Vec<String>,
    pub swapped: Vec<String>,
}

/// For every increasing basis tuple and every transposition of two argument
/// slots, checks `[…, e_j, …, e_i, …] = −[…, e_i, …, e_j, …]`.
pub fn check_anticommutativity<P: BasisProduct + ?Sized>(algebra: &P) -> Vec<AnticommutativityViolation> {
    let n = algebra.arity();
    let mut out = Vec::new();
    for tuple in increasing_tuples(algebra.dim(), n) {
        let base = algebra.basis_product(&tuple);
        for i in 0..n {
            for j in i + 1..n {
                let mut t = tuple.clone();
                t.swap(i, j);
                let swapped = algebra.basis_product(&t);
                if scalar::add(&base, &swapped)
                    .iter()
                    .any(|x| !num_traits::Zero::is_zero(x))
                {
                    out.push(AnticommutativityViolation {
                        tuple: tuple.iter().map(|k| k + 1).collect(),
                        swap: (i, j),
                        original: scalar::vector_to_strings(&base),
                        swapped: scalar::vector_to_strings(&swapped),
                    });
                }
            }
        }
    }
    out
}

/// Failed instance of the fundamental identity
/// `[[x_1,…,x_n], y_2,…,y_n] = Σ_i [x_1,…,[x_i, y_2,…,y_n],…,x_n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilippovViolation {
    /// Indices of the `x` arguments (1-based).
    pub x: Vec<usize>,
    /// Indices of the `y` arguments (1-based).
    pub y: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

/// Evaluates the Filippov identity on all basis choices with `x` and `y`
/// strictly increasing.
pub fn check_filippov(algebra: &NaryAlgebra) -> Result<Vec<FilippovViolation>> {
    let n = algebra.arity();
    let d = algebra.dim();
    let e = |i: usize| unit(d, i);
    let mut out = Vec::new();
    for x in increasing_tuples(d, n) {
        let xs: Vec<Vector> = x.iter().map(|&i| e(i)).collect();
        let inner = algebra.basis_product(&x);
        for y in increasing_tuples(d, n - 1) {
            let ys: Vec<Vector> = y.iter().map(|&i| e(i)).collect();
            let mut args = vec![inner.clone()];
            args.extend(ys.iter().cloned());
            let lhs = algebra.bracket(&args)?;

            let mut rhs = scalar::zeros(d);
            for i in 0..n {
                let mut a = vec![xs[i].clone()];
                a.extend(ys.iter().cloned());
                let xi = algebra.bracket(&a)?;
                if scalar::is_zero(&xi) {
                    continue;
                }
                let mut outer = xs.clone();
                outer[i] = xi;
                rhs = scalar::add(&rhs, &algebra.bracket(&outer)?);
            }
            if lhs != rhs {
                out.push(FilippovViolation {
                    x: x.iter().map(|k| k + 1).collect(),
                    y: y.iter().map(|k| k + 1).collect(),
                    lhs: scalar::vector_to_strings(&lhs),
                    rhs: scalar::vector_to_strings(&rhs),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;
    use crate::nary::algebra::abelian;

    /// Table with raw (unsorted) overrides, something canonical storage
    /// cannot express.
    struct Corrupted {
        inner: NaryAlgebra,
        overrides: HashMap<Vec<usize>, Vector>,
    }

    impl BasisProduct for Corrupted {
        fn arity(&self) -> usize {
            self.inner.arity()
        }
        fn dim(&self) -> usize {
            self.inner.dim()
        }
        fn basis_product(&self, indices: &[usize]) -> Vector {
            self.overrides
                .get(indices)
                .cloned()
                .unwrap_or_else(|| self.inner.basis_product(indices))
        }
    }

    fn a4_like() -> NaryAlgebra {
        let mut a = NaryAlgebra::new(3, 4).unwrap();
        a.set_product(&[0, 1, 2], unit(4, 3)).unwrap();
        a
    }

    #[test]
    fn stored_tables_are_anticommutative() {
        assert!(check_anticommutativity(&a4_like()).is_empty());
    }

    #[test]
    fn corrupted_table_reports_one_violation() {
        let inner = a4_like();
        let mut overrides = HashMap::new();
        // [e2,e1,e3] = +e4 instead of −e4
        overrides.insert(vec![1, 0, 2], unit(4, 3));
        let c = Corrupted { inner, overrides };
        let v = check_anticommutativity(&c);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].tuple, vec![1, 2, 3]);
        assert_eq!(v[0].swap, (0, 1));
    }

    #[test]
    fn abelian_satisfies_filippov() {
        let a = abelian(2, 2).unwrap();
        assert!(check_filippov(&a).unwrap().is_empty());
    }

    #[test]
    fn non_lie_binary_algebra_violates() {
        // [e1,e2] = e1, [e1,e3] = e2, [e2,e3] = e1 is not a Lie algebra
        let mut a = NaryAlgebra::new(2, 3).unwrap();
        a.set_product(&[0, 1], unit(3, 0)).unwrap();
        a.set_product(&[0, 2], unit(3, 1)).unwrap();
        a.set_product(&[1, 2], unit(3, 0)).unwrap();
        assert!(!check_filippov(&a).unwrap().is_empty());
    }
}
