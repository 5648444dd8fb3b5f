//! Seeded random inputs: small rationals `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 9`,
//! antisymmetric maps, and exact rational orthonormal octonion data.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::scalar::{self, frac, Rational, Vector};
use crate::linalg::Matrix;
use crate::nary::LinearMap;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent per-trial seeds drawn from a master seed.
pub fn derive_seeds(master: u64, count: usize) -> Vec<u64> {
    let mut r = rng(master);
    (0..count).map(|_| r.next_u64()).collect()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

pub fn small_vector<R: Rng>(rng: &mut R, d: usize) -> Vector {
    (0..d).map(|_| small_rational(rng)).collect()
}

pub fn antisymmetric<R: Rng>(rng: &mut R, d: usize) -> LinearMap {
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let q = small_rational(rng);
            m[(j, i)] = -q.clone();
            m[(i, j)] = q;
        }
    }
    LinearMap::new(m).expect("square")
}

/// Antisymmetric map plus a nonzero symmetric perturbation (a diagonal entry
/// or a symmetric off-diagonal pair), so it is never antisymmetric.
pub fn non_antisymmetric<R: Rng>(rng: &mut R, d: usize) -> LinearMap {
    let base = antisymmetric(rng, d);
    let mut m = base.into_matrix();
    let mut q = small_rational(rng);
    while num_traits::Zero::is_zero(&q) {
        q = small_rational(rng);
    }
    let i = rng.gen_range(0..d);
    let j = rng.gen_range(0..d);
    m[(i, j)] += &q;
    if i != j {
        m[(j, i)] += &q;
    }
    LinearMap::new(m).expect("square")
}

/// Householder reflection `v ↦ v − 2 (w·v)/(w·w) w` as a matrix.
pub fn reflection(w: &[Rational]) -> Matrix {
    let d = w.len();
    let ww = scalar::dot(w, w);
    let mut m = Matrix::identity(d);
    if num_traits::Zero::is_zero(&ww) {
        return m;
    }
    let k = scalar::int(2) / ww;
    for i in 0..d {
        for j in 0..d {
            let t = &k * &w[i] * &w[j];
            m[(i, j)] -= t;
        }
    }
    m
}

/// Rational orthogonal 8×8 matrix fixing `e1`: a product of reflections in
/// random small-integer vectors orthogonal to `e1`.
pub fn imaginary_orthogonal<R: Rng>(rng: &mut R, reflections: usize) -> Matrix {
    let mut o = Matrix::identity(8);
    for _ in 0..reflections {
        let mut w = scalar::zeros(8);
        for x in w.iter_mut().skip(1) {
            *x = scalar::int(rng.gen_range(-3..=3));
        }
        o = reflection(&w).mul(&o).expect("8x8");
    }
    o
}

/// Random orthonormal pair of imaginary units `(O e2, O e3)`.
pub fn unit_pair<R: Rng>(rng: &mut R) -> (Vector, Vector) {
    let o = imaginary_orthogonal(rng, 3);
    (o.column(1), o.column(2))
}

/// Imaginary unit supported on one or two of the given coordinates, with
/// entries from `{±1}` or `{±3/5, ±4/5}`.
pub fn pattern_unit<R: Rng>(rng: &mut R, coords: &[usize]) -> Vector {
    let mut v = scalar::zeros(8);
    let sign = |rng: &mut R| if rng.gen_bool(0.5) { 1 } else { -1 };
    if coords.len() < 2 || rng.gen_bool(0.3) {
        v[coords[rng.gen_range(0..coords.len())]] = scalar::int(sign(rng));
        return v;
    }
    let a = rng.gen_range(0..coords.len());
    let mut b = rng.gen_range(0..coords.len() - 1);
    if b >= a {
        b += 1;
    }
    let (p, q) = if rng.gen_bool(0.5) { (3, 4) } else { (4, 3) };
    v[coords[a]] = frac(sign(rng) * p, 5);
    v[coords[b]] = frac(sign(rng) * q, 5);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = small_vector(&mut rng(7), 10);
        let b = small_vector(&mut rng(7), 10);
        assert_eq!(a, b);
        assert_eq!(derive_seeds(3, 4), derive_seeds(3, 4));
    }

    #[test]
    fn orthogonal_matrices() {
        let mut r = rng(11);
        for _ in 0..5 {
            let o = imaginary_orthogonal(&mut r, 3);
            assert_eq!(o.transpose().mul(&o).unwrap(), Matrix::identity(8));
            assert_eq!(o.column(0), scalar::unit(8, 0));
        }
    }

    #[test]
    fn perturbations_are_never_antisymmetric() {
        let mut r = rng(5);
        for _ in 0..50 {
            assert!(antisymmetric(&mut r, 5).is_antisymmetric());
            assert!(!non_antisymmetric(&mut r, 5).is_antisymmetric());
        }
    }

    #[test]
    fn pattern_units_have_norm_one() {
        let mut r = rng(1);
        for _ in 0..20 {
            let v = pattern_unit(&mut r, &[1, 2, 3, 4, 5, 6, 7]);
            assert_eq!(scalar::dot(&v, &v), scalar::int(1));
        }
    }
}
