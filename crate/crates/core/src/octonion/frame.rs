//! Orthonormal frames `(1, x, y, xy, z, xz, yz, (xy)z)` and the automorphisms
//! of `M8` they induce.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{ternary_bracket, ExactOctonion, OctScalar, Octonion};
use crate::error::{Error, Result};
use crate::linalg::scalar::{self, Rational, Vector};
use crate::linalg::{Matrix, Subspace};
use crate::nary::algebra::increasing_tuples;
use crate::nary::LinearMap;
use crate::sampling::reflection;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum Mode {
    Exact,
    Approx { tol: f64 },
}

pub const DEFAULT_TOL: f64 = 1e-9;

/// How an exact rational unit `z ⊥ {1, x, y, xy}` is found.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitSearch {
    /// Bound on each integer coefficient over the perp basis.
    pub cap: u32,
    /// Complete `{1, x, y, xy}` to a rational orthonormal basis by
    /// reflections when the enumeration finds nothing.
    pub reflection_fallback: bool,
}

impl Default for UnitSearch {
    fn default() -> Self {
        Self {
            cap: 6,
            reflection_fallback: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frame<T> {
    /// `e1, x, y, xy, z, xz, yz, (xy)z`.
    pub elements: [Octonion<T>; 8],
}

pub type ExactFrame = Frame<Rational>;

impl<T: OctScalar> Frame<T> {
    fn from_xyz(x: Octonion<T>, y: Octonion<T>, z: Octonion<T>) -> Self {
        let xy = x.mul(&y);
        let xz = x.mul(&z);
        let yz = y.mul(&z);
        let xyz = xy.mul(&z);
        Self {
            elements: [Octonion::one(), x, y, xy, z, xz, yz, xyz],
        }
    }

    pub fn x(&self) -> &Octonion<T> {
        &self.elements[1]
    }

    pub fn y(&self) -> &Octonion<T> {
        &self.elements[2]
    }

    pub fn z(&self) -> &Octonion<T> {
        &self.elements[4]
    }
}

impl ExactFrame {
    pub fn identity() -> Self {
        Self {
            elements: std::array::from_fn(ExactOctonion::basis),
        }
    }

    /// Pairwise orthogonal, unit norm, imaginary elements squaring to `−1`.
    pub fn is_valid(&self) -> bool {
        let minus_one = ExactOctonion::one().neg();
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                let want = if i == j {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                };
                if a.form(b) != want {
                    return false;
                }
            }
            if i > 0 && a.mul(a) != minus_one {
                return false;
            }
        }
        true
    }

    /// Matrix whose columns are the frame elements.
    pub fn matrix(&self) -> Matrix {
        let cols: Vec<Vector> = self.elements.iter().map(|e| e.to_vec()).collect();
        Matrix::from_columns(8, &cols).expect("8 columns of length 8")
    }
}

impl Frame<f64> {
    pub fn matrix(&self) -> [[f64; 8]; 8] {
        std::array::from_fn(|r| std::array::from_fn(|c| self.elements[c].coords()[r]))
    }

    /// Largest deviation from orthonormality and from `u² = −1`.
    pub fn defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.form(b) - want).abs());
            }
            if i > 0 {
                worst = worst.max(a.mul(a).add(&Octonion::one()).max_abs());
            }
        }
        worst
    }
}

fn check_pair_exact(x: &ExactOctonion, y: &ExactOctonion) -> Result<()> {
    let minus_one = ExactOctonion::one().neg();
    if x.mul(x) != minus_one {
        return Err(Error::Domain("x must satisfy x^2 = -1".into()));
    }
    if y.mul(y) != minus_one {
        return Err(Error::Domain("y must satisfy y^2 = -1".into()));
    }
    if !x.form(y).is_zero() {
        return Err(Error::Domain("y must be orthogonal to x".into()));
    }
    Ok(())
}

/// Integer coefficient vectors with entries in `[-cap, cap]`, by increasing
/// L1 norm and then in descending lexicographic order.
fn coefficient_candidates(len: usize, cap: i64) -> impl Iterator<Item = Vec<i64>> {
    let max_l1 = cap * len as i64;
    (1..=max_l1).flat_map(move |l1| {
        let mut level = Vec::new();
        let mut cur = vec![0i64; len];
        fill(&mut level, &mut cur, 0, l1, cap);
        level
    })
}

fn fill(out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>, pos: usize, left: i64, cap: i64) {
    if pos == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let rest = (cur.len() - pos - 1) as i64 * cap;
    let hi = left.min(cap);
    // descending values: hi, …, 1, 0, −1, …, −hi
    for v in (-hi..=hi).rev() {
        if left - v.abs() > rest {
            continue;
        }
        cur[pos] = v;
        fill(out, cur, pos + 1, left - v.abs(), cap);
    }
    cur[pos] = 0;
}

/// First candidate `c` whose combination `Σ c_k b_k` has rational length,
/// with that length. Norms are tested on the integer Gram form `L·G`, since
/// `a/L` is a rational square exactly when `a·L` is an integer square.
fn find_unit(basis: &[Vector], cap: i64) -> Option<(Vec<i64>, Rational)> {
    let n = basis.len();
    let gram: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| scalar::dot(&basis[i], &basis[j])).collect())
        .collect();
    let l = gram.iter().flatten().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let g: Vec<Vec<BigInt>> = gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| (q * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let small: Option<(Vec<Vec<i128>>, i128)> = g
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.to_i64().map(i128::from))
                .collect::<Option<Vec<_>>>()
        })
        .collect::<Option<Vec<_>>>()
        .zip(l.to_i64().map(i128::from));
    for c in coefficient_candidates(n, cap) {
        if let Some((gs, ls)) = &small {
            if let Some(al) = quadratic_form_i128(gs, &c).and_then(|a| a.checked_mul(*ls)) {
                if let Some(r) = exact_isqrt(al) {
                    return Some((c, Rational::new(BigInt::from(r), l)));
                }
                continue;
            }
        }
        let mut a = BigInt::zero();
        for i in 0..n {
            if c[i] == 0 {
                continue;
            }
            let mut row = BigInt::zero();
            for j in 0..n {
                if c[j] != 0 {
                    row += &g[i][j] * c[j];
                }
            }
            a += row * c[i];
        }
        let al = &a * &l;
        let r = al.sqrt();
        if &r * &r == al {
            return Some((c, Rational::new(r, l)));
        }
    }
    None
}

fn quadratic_form_i128(g: &[Vec<i128>], c: &[i64]) -> Option<i128> {
    let mut a: i128 = 0;
    for (i, row) in g.iter().enumerate() {
        if c[i] == 0 {
            continue;
        }
        let mut t: i128 = 0;
        for (j, x) in row.iter().enumerate() {
            t = t.checked_add(x.checked_mul(c[j] as i128)?)?;
        }
        a = a.checked_add(t.checked_mul(c[i] as i128)?)?;
    }
    Some(a)
}

fn exact_isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r > 0 && r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Completes orthonormal rational `targets` to a rational orthonormal basis
/// by composing reflections; returns the orthogonal matrix whose first
/// columns are the targets.
fn reflection_completion(targets: &[Vector]) -> Matrix {
    let mut o = Matrix::identity(8);
    for (k, t) in targets.iter().enumerate() {
        let u = o.column(k);
        if &u != t {
            let w = scalar::sub(&u, t);
            o = reflection(&w).mul(&o).expect("8x8");
        }
    }
    o
}

/// Exact frame with `Φ(e2) = x`, `Φ(e3) = y`.
pub fn frame_from_pair_exact(x: &ExactOctonion, y: &ExactOctonion, search: UnitSearch) -> Result<ExactFrame> {
    check_pair_exact(x, y)?;
    let xy = x.mul(y);
    let known: Vec<Vector> = vec![ExactOctonion::one().to_vec(), x.to_vec(), y.to_vec(), xy.to_vec()];
    let perp = Subspace::span(8, &known)?.annihilator();
    let basis = perp.basis_vectors();

    let z = find_unit(&basis, search.cap as i64).map(|(c, r)| {
        let mut v = scalar::zeros(8);
        for (k, b) in c.iter().zip(&basis) {
            v = scalar::add(&v, &scalar::scale(&scalar::int(*k), b));
        }
        scalar::scale(&(Rational::from_integer(1.into()) / r), &v)
    });
    let z = match z {
        Some(z) => z,
        None if search.reflection_fallback => reflection_completion(&known).column(4),
        None => return Err(Error::NoExactUnit { cap: search.cap }),
    };
    let frame = Frame::from_xyz(x.clone(), y.clone(), ExactOctonion::from_vector(&z)?);
    if !frame.is_valid() {
        return Err(Error::Internal("constructed frame is not orthonormal".into()));
    }
    Ok(frame)
}

/// Floating-point frame; `z` is the normalized residual of the standard basis
/// vector farthest from `span{1, x, y, xy}`.
pub fn frame_from_pair_approx(x: &Octonion<f64>, y: &Octonion<f64>, tol: f64) -> Result<Frame<f64>> {
    let one = Octonion::<f64>::one();
    if x.mul(x).add(&one).max_abs() > tol || y.mul(y).add(&one).max_abs() > tol {
        return Err(Error::Domain(format!("x^2 = -1 and y^2 = -1 required within {tol}")));
    }
    if x.form(y).abs() > tol {
        return Err(Error::Domain(format!("x and y must be orthogonal within {tol}")));
    }
    let xy = x.mul(y);
    let known = [one, x.clone(), y.clone(), xy];
    let mut best: Option<(f64, Octonion<f64>)> = None;
    for k in 0..8 {
        let mut v = Octonion::<f64>::basis(k);
        // two Gram–Schmidt passes for stability
        for _ in 0..2 {
            for q in &known {
                let n = q.dot(q);
                v = v.sub(&q.scale(&(q.dot(&v) / n)));
            }
        }
        let len = v.dot(&v).sqrt();
        if best.as_ref().is_none_or(|(l, _)| len > *l) {
            best = Some((len, v));
        }
    }
    let (len, v) = best.expect("eight candidates");
    let z = v.scale(&(1.0 / len));
    let frame = Frame::from_xyz(x.clone(), y.clone(), z);
    let defect = frame.defect();
    if defect > tol.max(1e-12) * 100.0 {
        return Err(Error::Internal(format!("approximate frame defect {defect:e}")));
    }
    Ok(frame)
}

/// Failed automorphism conditions, by kind.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AutomorphismReport {
    /// `(i, j)` with `Φ(e_i e_j) ≠ Φ(e_i)Φ(e_j)` (1-based).
    pub product_failures: Vec<(usize, usize)>,
    /// `(i, j)` with `⟨Φe_i, Φe_j⟩ ≠ δ_ij`.
    pub form_failures: Vec<(usize, usize)>,
    /// Increasing triples where the ternary bracket is not preserved.
    pub bracket_failures: Vec<(usize, usize, usize)>,
}

impl AutomorphismReport {
    pub fn is_clean(&self) -> bool {
        self.product_failures.is_empty() && self.form_failures.is_empty() && self.bracket_failures.is_empty()
    }
}

/// Checks multiplicativity on all 64 basis pairs, the form, and the ternary
/// bracket on all 56 increasing basis triples.
pub fn check_automorphism(map: &LinearMap) -> Result<AutomorphismReport> {
    let image = |i: usize| -> Result<ExactOctonion> { ExactOctonion::from_vector(&map.apply(&scalar::unit(8, i))?) };
    let apply = |o: &ExactOctonion| -> Result<ExactOctonion> { ExactOctonion::from_vector(&map.apply(&o.to_vec())?) };
    let images: Vec<ExactOctonion> = (0..8).map(image).collect::<Result<_>>()?;
    let e = ExactOctonion::basis;
    let mut report = AutomorphismReport::default();
    for i in 0..8 {
        for j in 0..8 {
            if apply(&e(i).mul(&e(j)))? != images[i].mul(&images[j]) {
                report.product_failures.push((i + 1, j + 1));
            }
            let want = if i == j {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            };
            if images[i].form(&images[j]) != want {
                report.form_failures.push((i + 1, j + 1));
            }
        }
    }
    for t in increasing_tuples(8, 3) {
        let lhs = apply(&ternary_bracket(&e(t[0]), &e(t[1]), &e(t[2])))?;
        let rhs = ternary_bracket(&images[t[0]], &images[t[1]], &images[t[2]]);
        if lhs != rhs {
            report.bracket_failures.push((t[0] + 1, t[1] + 1, t[2] + 1));
        }
    }
    Ok(report)
}

/// `Φ` with `Φ(e_i) = frame.elements[i]`, verified to be an automorphism of
/// the octonions and of `M8`.
pub fn automorphism_from_frame(frame: &ExactFrame) -> Result<LinearMap> {
    let phi = LinearMap::new(frame.matrix())?;
    let report = check_automorphism(&phi)?;
    if !report.is_clean() {
        return Err(Error::Internal(format!(
            "frame map is not an automorphism: {} product, {} form, {} bracket failures",
            report.product_failures.len(),
            report.form_failures.len(),
            report.bracket_failures.len()
        )));
    }
    Ok(phi)
}

/// Inverse of a frame automorphism (its transpose, the frame being orthonormal).
pub fn inverse(phi: &LinearMap) -> Result<LinearMap> {
    let inv = phi.transpose();
    if inv.compose(phi)? != LinearMap::identity(phi.dim()) {
        return Err(Error::Internal("frame matrix is not orthogonal".into()));
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::frac;
    use crate::sampling;

    fn e(i: usize) -> ExactOctonion {
        ExactOctonion::basis(i - 1)
    }

    #[test]
    fn candidate_order() {
        let c: Vec<_> = coefficient_candidates(2, 1).take(6).collect();
        assert_eq!(
            c,
            vec![
                vec![1, 0],
                vec![0, 1],
                vec![0, -1],
                vec![-1, 0],
                vec![1, 1],
                vec![1, -1]
            ]
        );
        assert_eq!(coefficient_candidates(4, 1).count(), 80);
    }

    #[test]
    fn basis_pair_gives_identity_frame() {
        let f = frame_from_pair_exact(&e(2), &e(3), UnitSearch::default()).unwrap();
        assert_eq!(f, ExactFrame::identity());
        let phi = automorphism_from_frame(&f).unwrap();
        assert_eq!(phi, LinearMap::identity(8));
    }

    #[test]
    fn other_pairs() {
        let f = frame_from_pair_exact(&e(3), &e(5), UnitSearch::default()).unwrap();
        assert!(f.is_valid());
        let phi = automorphism_from_frame(&f).unwrap();
        // signed permutation
        for c in 0..8 {
            let col = phi.matrix().column(c);
            assert_eq!(col.iter().filter(|x| !x.is_zero()).count(), 1);
        }

        let x = ExactOctonion::from_vector(&{
            let mut v = scalar::zeros(8);
            v[1] = frac(3, 5);
            v[2] = frac(4, 5);
            v
        })
        .unwrap();
        let f = frame_from_pair_exact(&x, &e(5), UnitSearch::default()).unwrap();
        assert!(f.is_valid());
        let phi = automorphism_from_frame(&f).unwrap();
        assert!(check_automorphism(&inverse(&phi).unwrap()).unwrap().is_clean());
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            frame_from_pair_exact(&e(2), &e(2), UnitSearch::default()),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            frame_from_pair_exact(&e(1), &e(3), UnitSearch::default()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn fallback_and_exhaustion() {
        let mut r = sampling::rng(1);
        let strict = UnitSearch {
            cap: 1,
            reflection_fallback: false,
        };
        let mut exhausted = 0;
        for _ in 0..10 {
            let (x, y) = sampling::unit_pair(&mut r);
            let x = ExactOctonion::from_vector(&x).unwrap();
            let y = ExactOctonion::from_vector(&y).unwrap();
            let f = frame_from_pair_exact(&x, &y, UnitSearch::default()).unwrap();
            assert!(check_automorphism(&automorphism_from_frame(&f).unwrap())
                .unwrap()
                .is_clean());
            if let Err(Error::NoExactUnit { cap }) = frame_from_pair_exact(&x, &y, strict) {
                assert_eq!(cap, 1);
                exhausted += 1;
            }
        }
        assert!(exhausted > 0, "expected some random pairs to defeat a cap-1 search");
    }

    #[test]
    fn approx_frame() {
        let s = 0.5f64.sqrt();
        let mut x = Octonion::<f64>::zero();
        x = x.add(&Octonion::basis(1).scale(&s)).add(&Octonion::basis(2).scale(&s));
        let y = Octonion::<f64>::basis(4);
        let f = frame_from_pair_approx(&x, &y, DEFAULT_TOL).unwrap();
        assert!(f.defect() < 1e-12);
    }

    #[test]
    fn non_automorphism_detected() {
        let swap = LinearMap::elementary_antisymmetric(8, 1, 2);
        assert!(!check_automorphism(&swap).unwrap().is_clean());
    }
}
