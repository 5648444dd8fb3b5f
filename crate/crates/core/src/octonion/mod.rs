//! Octonions over an arbitrary scalar type (exact rationals or `f64`), the
//! ternary Malcev algebra `M8` built on them, its derivations, frames and
//! automorphisms, and the constructive local-derivation witness.
//!
//! Basis order `e1..e8 = 1, a, b, ab, c, ac, bc, (ab)c`. The product comes from
//! Cayley–Dickson doubling `(p, q)(r, s) = (pr − s̄q, sp + qr̄)`, whose natural
//! index order already realizes these labels.

pub mod explore;
pub mod frame;
pub mod identities;
pub mod malcev;
pub mod witness;

use std::ops::Neg;
use std::sync::OnceLock;

use num_traits::Num;

use crate::error::{check_len, Result};
use crate::linalg::scalar::{Rational, Vector};

/// Scalars octonion arithmetic can run over.
pub trait OctScalar: Clone + PartialEq + Num + Neg<Output = Self> {}

impl<T: Clone + PartialEq + Num + Neg<Output = T>> OctScalar for T {}

fn cd_conj<T: OctScalar>(x: &[T]) -> Vec<T> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = cd_conj(&x[..h]);
    out.extend(x[h..].iter().map(|t| -t.clone()));
    out
}

/// Recursive Cayley–Dickson product on coordinate slices of length `2^k`.
pub fn cayley_dickson_mul<T: OctScalar>(x: &[T], y: &[T]) -> Vec<T> {
    if x.len() == 1 {
        return vec![x[0].clone() * y[0].clone()];
    }
    let h = x.len() / 2;
    let (p, q) = x.split_at(h);
    let (r, s) = y.split_at(h);
    let pr = cayley_dickson_mul(p, r);
    let sq = cayley_dickson_mul(&cd_conj(s), q);
    let sp = cayley_dickson_mul(s, p);
    let qr = cayley_dickson_mul(q, &cd_conj(r));
    pr.into_iter()
        .zip(sq)
        .map(|(a, b)| a - b)
        .chain(sp.into_iter().zip(qr).map(|(a, b)| a + b))
        .collect()
}

/// `e_i e_j = sign · e_k`, stored as `(sign, k)` (0-based).
pub type MulTable = [[(i8, usize); 8]; 8];

pub fn mul_table() -> &'static MulTable {
    static TABLE: OnceLock<MulTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0i8, 0usize); 8]; 8];
        for (i, row) in t.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let mut a = [0i64; 8];
                let mut b = [0i64; 8];
                a[i] = 1;
                b[j] = 1;
                let p = cayley_dickson_mul(&a, &b);
                let k = p.iter().position(|&c| c != 0).expect("unit product is a unit");
                *cell = (p[k] as i8, k);
            }
        }
        t
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Octonion<T> {
    coords: [T; 8],
}

pub type ExactOctonion = Octonion<Rational>;

impl<T: OctScalar> Octonion<T> {
    pub fn new(coords: [T; 8]) -> Self {
        Self { coords }
    }

    pub fn from_slice(v: &[T]) -> Result<Self> {
        check_len("octonion coordinates", 8, v.len())?;
        Ok(Self {
            coords: std::array::from_fn(|i| v[i].clone()),
        })
    }

    pub fn zero() -> Self {
        Self {
            coords: std::array::from_fn(|_| T::zero()),
        }
    }

    pub fn one() -> Self {
        Self::basis(0)
    }

    /// `e_{i+1}` (0-based `i`).
    pub fn basis(i: usize) -> Self {
        let mut o = Self::zero();
        o.coords[i] = T::one();
        o
    }

    pub fn coords(&self) -> &[T; 8] {
        &self.coords
    }

    pub fn to_vec(&self) -> Vec<T> {
        self.coords.to_vec()
    }

    pub fn re(&self) -> T {
        self.coords[0].clone()
    }

    pub fn conj(&self) -> Self {
        Self {
            coords: std::array::from_fn(|i| {
                if i == 0 {
                    self.coords[0].clone()
                } else {
                    -self.coords[i].clone()
                }
            }),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            coords: std::array::from_fn(|i| self.coords[i].clone() + o.coords[i].clone()),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self {
            coords: std::array::from_fn(|i| self.coords[i].clone() - o.coords[i].clone()),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            coords: std::array::from_fn(|i| k.clone() * self.coords[i].clone()),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coords: std::array::from_fn(|i| -self.coords[i].clone()),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = mul_table();
        let mut out = Self::zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = t[i][j];
                let p = a.clone() * b.clone();
                out.coords[k] = if s > 0 {
                    out.coords[k].clone() + p
                } else {
                    out.coords[k].clone() - p
                };
            }
        }
        out
    }

    /// `½(x ȳ + y x̄)`, which is real (a multiple of `e1`).
    pub fn form_octonion(&self, o: &Self) -> Self {
        let two = T::one() + T::one();
        self.mul(&o.conj()).add(&o.mul(&self.conj())).scale(&(T::one() / two))
    }

    /// `⟨x, y⟩`: the `e1` coordinate of `½(x ȳ + y x̄)`.
    pub fn form(&self, o: &Self) -> T {
        self.form_octonion(o).re()
    }

    /// `N(x) = ⟨x, x⟩`.
    pub fn norm(&self) -> T {
        self.form(self)
    }

    /// Coordinate dot product; equals the form because the basis is orthonormal.
    pub fn dot(&self, o: &Self) -> T {
        self.coords
            .iter()
            .zip(&o.coords)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `x − Re(x)`.
    pub fn imag(&self) -> Self {
        let mut o = self.clone();
        o.coords[0] = T::zero();
        o
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(T::is_zero)
    }

    pub fn map<U: OctScalar>(&self, f: impl Fn(&T) -> U) -> Octonion<U> {
        Octonion {
            coords: std::array::from_fn(|i| f(&self.coords[i])),
        }
    }
}

impl ExactOctonion {
    pub fn from_vector(v: &Vector) -> Result<Self> {
        Self::from_slice(v)
    }

    pub fn to_f64(&self) -> Octonion<f64> {
        self.map(crate::linalg::scalar::to_f64)
    }
}

impl Octonion<f64> {
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// `[x, y, z] = (x ȳ) z − ⟨y,z⟩ x + ⟨x,z⟩ y − ⟨x,y⟩ z`.
pub fn ternary_bracket<T: OctScalar>(x: &Octonion<T>, y: &Octonion<T>, z: &Octonion<T>) -> Octonion<T> {
    x.mul(&y.conj())
        .mul(z)
        .sub(&x.scale(&y.form(z)))
        .add(&y.scale(&x.form(z)))
        .sub(&z.scale(&x.form(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{frac, int};
    use proptest::prelude::*;

    type O = ExactOctonion;

    fn e(i: usize) -> O {
        O::basis(i - 1)
    }

    #[test]
    fn labels() {
        // a·b = ab, a·c = ac, b·c = bc, (ab)·c = abc
        assert_eq!(e(2).mul(&e(3)), e(4));
        assert_eq!(e(2).mul(&e(5)), e(6));
        assert_eq!(e(3).mul(&e(5)), e(7));
        assert_eq!(e(4).mul(&e(5)), e(8));
        for i in 2..=8 {
            assert_eq!(e(i).mul(&e(i)), e(1).neg());
            assert_eq!(e(1).mul(&e(i)), e(i));
        }
    }

    #[test]
    fn form_is_orthonormal() {
        for i in 1..=8 {
            for j in 1..=8 {
                let want = if i == j { int(1) } else { int(0) };
                assert_eq!(e(i).form(&e(j)), want);
            }
        }
    }

    #[test]
    fn conj_involution() {
        let x = O::from_slice(&(1..=8).map(|k| frac(k, 3)).collect::<Vec<_>>()).unwrap();
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(ternary_bracket(&e(1), &e(2), &e(3)), e(4).neg());
        assert!(ternary_bracket(&e(3), &e(3), &e(6)).is_zero());
    }

    fn small_q() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=9).prop_map(|(p, q)| frac(p, q))
    }

    fn oct() -> impl Strategy<Value = O> {
        proptest::collection::vec(small_q(), 8).prop_map(|v| O::from_slice(&v).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn norm_is_multiplicative(x in oct(), y in oct()) {
            prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn form_is_scalar_valued(x in oct(), y in oct()) {
            let f = x.form_octonion(&y);
            prop_assert!(f.imag().is_zero());
            prop_assert_eq!(f.re(), x.dot(&y));
        }

        #[test]
        fn bracket_alternates(x in oct(), y in oct(), z in oct()) {
            let b = ternary_bracket(&x, &y, &z);
            prop_assert_eq!(ternary_bracket(&y, &x, &z), b.neg());
            prop_assert_eq!(ternary_bracket(&x, &z, &y), b.neg());
            prop_assert_eq!(ternary_bracket(&z, &y, &x), b.neg());
            prop_assert!(ternary_bracket(&x, &x, &z).is_zero());
        }
    }
}
