//! Constructive witness `D_x ∈ Der(M8)` with `D_x(x) = ∇(x)` for an
//! antisymmetric `∇`:
//!
//! 1. `D_e1` is a derivation agreeing with `∇` at `e1`; `∇' = ∇ − D_e1` kills `e1`.
//! 2. If `x ∈ span{e1}` or `∇'(x) = 0`, `D_e1` already works.
//! 3. Otherwise write `x = λ0 e1 + λ x1`, `∇'(x) = μ y1` with unit imaginary
//!    `x1 ⊥ y1`, take the frame automorphism `Φ` with `Φ(e2) = x1`,
//!    `Φ(e3) = y1`, and set `D_x = D_e1 + (μ/λ) Φ D° Φ⁻¹`.

use num_traits::Zero;
use serde::Serialize;

use super::frame::{automorphism_from_frame, frame_from_pair_approx, frame_from_pair_exact, inverse, Mode, UnitSearch};
use super::malcev::M8;
use super::{ExactOctonion, Octonion};
use crate::error::{check_len, Error, Result};
use crate::linalg::scalar::{self, Rational, Vector};
use crate::linalg::{solve, Matrix};
use crate::nary::algebra::BasisProduct;
use crate::nary::{is_derivation, multi_point_witness, LinearMap, WitnessTrace};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessCase {
    /// `x = 0`.
    ZeroPoint,
    /// `x ∈ span{e1}` or `∇'(x) = 0`.
    Trivial,
    /// Built through a frame automorphism.
    Frame,
}

/// `x = λ0 e1 + λ x1` and `∇'(x) = μ y1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessDecomposition<T> {
    pub lambda0: Rational,
    pub lambda: T,
    pub x1: Octonion<T>,
    pub y1: Octonion<T>,
    pub mu: T,
}

#[derive(Clone, Debug)]
pub struct ExactWitness {
    pub case: WitnessCase,
    pub map: LinearMap,
    pub trace: WitnessTrace,
    pub decomposition: Option<WitnessDecomposition<Rational>>,
    /// `Φ`, when the frame case was taken.
    pub automorphism: Option<LinearMap>,
}

#[derive(Clone, Debug)]
pub struct ApproxWitness {
    pub case: WitnessCase,
    pub matrix: [[f64; 8]; 8],
    pub decomposition: Option<WitnessDecomposition<f64>>,
    /// `‖D_x(x) − ∇(x)‖∞`.
    pub value_residual: f64,
    /// Largest Leibniz-rule defect over increasing basis triples.
    pub leibniz_residual: f64,
    pub tol: f64,
}

#[derive(Clone, Debug)]
pub enum ConstructiveWitness {
    Exact(Box<ExactWitness>),
    Approx(Box<ApproxWitness>),
}

/// Steps 1 and 2 are exact in both modes.
struct Prepared {
    nabla_x: Vector,
    d_e1: LinearMap,
    reduced_image: Vector,
    imag: Vector,
}

fn prepare(m8: &M8, nabla: &LinearMap, x: &[Rational]) -> Result<Prepared> {
    check_len("map", 8, nabla.dim())?;
    check_len("point", 8, x.len())?;
    if !nabla.is_antisymmetric() {
        return Err(Error::Domain("the map must be antisymmetric".into()));
    }
    let e1 = scalar::unit(8, 0);
    let d_e1 = multi_point_witness(&m8.der, &[(e1.clone(), nabla.apply(&e1)?)])?
        .ok_or_else(|| Error::Internal("no derivation matches an antisymmetric map at e1".into()))?
        .witness;
    let reduced = nabla.sub(&d_e1)?;
    let mut imag = x.to_vec();
    imag[0] = Rational::zero();
    Ok(Prepared {
        nabla_x: nabla.apply(x)?,
        d_e1,
        reduced_image: reduced.apply(x)?,
        imag,
    })
}

fn der_coordinates(m8: &M8, map: &LinearMap) -> Result<Vector> {
    let cols: Vec<Vector> = m8.der.basis_maps().iter().map(LinearMap::flatten).collect();
    let sys = Matrix::from_columns(64, &cols)?;
    solve(&sys, &map.flatten())?.ok_or_else(|| Error::Internal("witness is not in Der(M8)".into()))
}

fn finish_exact(
    m8: &M8,
    case: WitnessCase,
    map: LinearMap,
    x: &[Rational],
    nabla_x: Vector,
    decomposition: Option<WitnessDecomposition<Rational>>,
    automorphism: Option<LinearMap>,
) -> Result<ExactWitness> {
    if !is_derivation(&m8.algebra, &map)? {
        return Err(Error::Internal("constructed witness is not a derivation".into()));
    }
    if map.apply(x)? != nabla_x {
        return Err(Error::Internal("constructed witness misses the target value".into()));
    }
    let trace = WitnessTrace {
        constraints: vec![(x.to_vec(), nabla_x)],
        coefficients: der_coordinates(m8, &map)?,
        witness: map.clone(),
    };
    if !trace.replay(&m8.der)? {
        return Err(Error::Internal("witness trace does not replay".into()));
    }
    Ok(ExactWitness {
        case,
        map,
        trace,
        decomposition,
        automorphism,
    })
}

pub fn constructive_local_witness_exact(
    m8: &M8,
    nabla: &LinearMap,
    x: &[Rational],
    search: UnitSearch,
) -> Result<ExactWitness> {
    let p = prepare(m8, nabla, x)?;
    if scalar::is_zero(x) {
        return finish_exact(m8, WitnessCase::ZeroPoint, LinearMap::zero(8), x, p.nabla_x, None, None);
    }
    if scalar::is_zero(&p.imag) || scalar::is_zero(&p.reduced_image) {
        return finish_exact(m8, WitnessCase::Trivial, p.d_e1, x, p.nabla_x, None, None);
    }
    let lambda = scalar::sqrt_exact(&scalar::dot(&p.imag, &p.imag)).ok_or_else(|| Error::NotRationalSquare {
        what: "norm of the imaginary part of x",
        value: scalar::to_string(&scalar::dot(&p.imag, &p.imag)),
    })?;
    let y = &p.reduced_image;
    let mu = scalar::sqrt_exact(&scalar::dot(y, y)).ok_or_else(|| Error::NotRationalSquare {
        what: "norm of the reduced image",
        value: scalar::to_string(&scalar::dot(y, y)),
    })?;
    let x1 = ExactOctonion::from_vector(&p.imag)?.scale(&(Rational::from_integer(1.into()) / &lambda));
    let y1 = ExactOctonion::from_vector(y)?.scale(&(Rational::from_integer(1.into()) / &mu));
    if !y1.re().is_zero() || !x1.form(&y1).is_zero() {
        return Err(Error::Internal("reduced image is not orthogonal to e1 and x1".into()));
    }
    let frame = frame_from_pair_exact(&x1, &y1, search)?;
    let phi = automorphism_from_frame(&frame)?;
    let conj = phi.compose(&m8.base)?.compose(&inverse(&phi)?)?;
    let map = p.d_e1.add(&conj.scale(&(&mu / &lambda)))?;
    let decomposition = WitnessDecomposition {
        lambda0: x[0].clone(),
        lambda,
        x1,
        y1,
        mu,
    };
    finish_exact(
        m8,
        WitnessCase::Frame,
        map,
        x,
        p.nabla_x,
        Some(decomposition),
        Some(phi),
    )
}

type Mat8 = [[f64; 8]; 8];

fn to_f64_matrix(m: &Matrix) -> Mat8 {
    std::array::from_fn(|r| std::array::from_fn(|c| scalar::to_f64(&m[(r, c)])))
}

fn matmul(a: &Mat8, b: &Mat8) -> Mat8 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..8).map(|k| a[i][k] * b[k][j]).sum()))
}

fn transpose(a: &Mat8) -> Mat8 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

fn apply(a: &Mat8, v: &[f64; 8]) -> [f64; 8] {
    std::array::from_fn(|i| (0..8).map(|k| a[i][k] * v[k]).sum())
}

/// Largest Leibniz defect of a floating-point map on the `M8` basis triples.
pub fn leibniz_residual(m8: &M8, d: &Mat8) -> f64 {
    let prod = |t: &[usize]| -> [f64; 8] {
        let v = m8.algebra.basis_product(t);
        std::array::from_fn(|i| scalar::to_f64(&v[i]))
    };
    let mut worst: f64 = 0.0;
    for t in m8.algebra.increasing_tuples() {
        let lhs = apply(d, &prod(&t));
        let mut rhs = [0.0; 8];
        for slot in 0..3 {
            let mut args = t.clone();
            for (i, row) in d.iter().enumerate() {
                let c = row[t[slot]];
                if c == 0.0 {
                    continue;
                }
                args[slot] = i;
                let p = prod(&args);
                for k in 0..8 {
                    rhs[k] += c * p[k];
                }
            }
        }
        for k in 0..8 {
            worst = worst.max((lhs[k] - rhs[k]).abs());
        }
    }
    worst
}

pub fn constructive_local_witness_approx(
    m8: &M8,
    nabla: &LinearMap,
    x: &[Rational],
    tol: f64,
) -> Result<ApproxWitness> {
    let p = prepare(m8, nabla, x)?;
    let target: [f64; 8] = std::array::from_fn(|i| scalar::to_f64(&p.nabla_x[i]));
    let xf: [f64; 8] = std::array::from_fn(|i| scalar::to_f64(&x[i]));
    let finish = |case, matrix: Mat8, decomposition| -> Result<ApproxWitness> {
        let got = apply(&matrix, &xf);
        let value_residual = (0..8).map(|i| (got[i] - target[i]).abs()).fold(0.0, f64::max);
        let leibniz = leibniz_residual(m8, &matrix);
        if value_residual > tol || leibniz > tol {
            return Err(Error::Internal(format!(
                "approximate witness out of tolerance: value {value_residual:e}, Leibniz {leibniz:e}, tol {tol:e}"
            )));
        }
        Ok(ApproxWitness {
            case,
            matrix,
            decomposition,
            value_residual,
            leibniz_residual: leibniz,
            tol,
        })
    };
    if scalar::is_zero(x) {
        return finish(WitnessCase::ZeroPoint, [[0.0; 8]; 8], None);
    }
    let d_e1 = to_f64_matrix(p.d_e1.matrix());
    if scalar::is_zero(&p.imag) || scalar::is_zero(&p.reduced_image) {
        return finish(WitnessCase::Trivial, d_e1, None);
    }
    let lambda = scalar::to_f64(&scalar::dot(&p.imag, &p.imag)).sqrt();
    let mu = scalar::to_f64(&scalar::dot(&p.reduced_image, &p.reduced_image)).sqrt();
    let x1 = ExactOctonion::from_vector(&p.imag)?.to_f64().scale(&(1.0 / lambda));
    let y1 = ExactOctonion::from_vector(&p.reduced_image)?
        .to_f64()
        .scale(&(1.0 / mu));
    let frame = frame_from_pair_approx(&x1, &y1, tol)?;
    let phi = frame.matrix();
    let base = to_f64_matrix(m8.base.matrix());
    let conj = matmul(&matmul(&phi, &base), &transpose(&phi));
    let k = mu / lambda;
    let matrix: Mat8 = std::array::from_fn(|i| std::array::from_fn(|j| d_e1[i][j] + k * conj[i][j]));
    let decomposition = WitnessDecomposition {
        lambda0: x[0].clone(),
        lambda,
        x1,
        y1,
        mu,
    };
    finish(WitnessCase::Frame, matrix, Some(decomposition))
}

pub fn constructive_local_witness(
    m8: &M8,
    nabla: &LinearMap,
    x: &[Rational],
    mode: Mode,
    search: UnitSearch,
) -> Result<ConstructiveWitness> {
    match mode {
        Mode::Exact => {
            constructive_local_witness_exact(m8, nabla, x, search).map(|w| ConstructiveWitness::Exact(Box::new(w)))
        }
        Mode::Approx { tol } => {
            constructive_local_witness_approx(m8, nabla, x, tol).map(|w| ConstructiveWitness::Approx(Box::new(w)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::{frac, int, unit};

    fn delta(i: usize, j: usize) -> LinearMap {
        LinearMap::elementary_antisymmetric(8, i - 1, j - 1)
    }

    #[test]
    fn zero_map() {
        let m8 = M8::shared();
        let x: Vector = (0..8).map(|k| frac(k as i64 - 3, 2)).collect();
        let w = constructive_local_witness_exact(m8, &LinearMap::zero(8), &x, UnitSearch::default()).unwrap();
        assert!(w.map.is_zero());
    }

    #[test]
    fn derivation_input() {
        // Δ23 + Δ67 is a derivation (the negative of the base one)
        let m8 = M8::shared();
        let nabla = delta(2, 3).add(&delta(6, 7)).unwrap();
        assert!(is_derivation(&m8.algebra, &nabla).unwrap());
        let w = constructive_local_witness_exact(m8, &nabla, &unit(8, 1), UnitSearch::default()).unwrap();
        assert_eq!(w.map.apply(&unit(8, 1)).unwrap(), nabla.apply(&unit(8, 1)).unwrap());
        assert_eq!(w.case, WitnessCase::Frame);
    }

    #[test]
    fn first_row_only() {
        let m8 = M8::shared();
        let nabla = delta(1, 4).add(&delta(1, 6).scale(&int(2))).unwrap();
        let w = constructive_local_witness_exact(m8, &nabla, &unit(8, 0), UnitSearch::default()).unwrap();
        assert_eq!(w.case, WitnessCase::Trivial);
        assert_eq!(w.map.apply(&unit(8, 0)).unwrap(), nabla.apply(&unit(8, 0)).unwrap());
    }

    #[test]
    fn pure_local_derivation_is_witnessed() {
        // Δ12 is antisymmetric but not a derivation
        let m8 = M8::shared();
        let nabla = delta(1, 2).add(&delta(3, 5)).unwrap();
        assert!(!is_derivation(&m8.algebra, &nabla).unwrap());
        let mut x = scalar::zeros(8);
        x[0] = int(2);
        x[2] = frac(3, 5);
        x[4] = frac(4, 5);
        let w = constructive_local_witness_exact(m8, &nabla, &x, UnitSearch::default());
        match w {
            Ok(w) => assert_eq!(w.map.apply(&x).unwrap(), nabla.apply(&x).unwrap()),
            Err(Error::NotRationalSquare { .. }) => {}
            Err(e) => panic!("{e}"),
        }
        let a = constructive_local_witness_approx(m8, &nabla, &x, 1e-9).unwrap();
        assert!(a.value_residual <= 1e-9);
    }

    #[test]
    fn rejects_non_antisymmetric() {
        let mut m = Matrix::zeros(8, 8);
        m[(0, 0)] = int(1);
        let err = constructive_local_witness_exact(
            M8::shared(),
            &LinearMap::new(m).unwrap(),
            &unit(8, 1),
            UnitSearch::default(),
        );
        assert!(matches!(err, Err(Error::Domain(_))));
    }

    #[test]
    fn irrational_norm_is_reported() {
        let m8 = M8::shared();
        let mut x = scalar::zeros(8);
        x[1] = int(1);
        x[2] = int(1);
        let err = constructive_local_witness_exact(m8, &delta(2, 5), &x, UnitSearch::default());
        assert!(matches!(err, Err(Error::NotRationalSquare { .. })));
        let a = constructive_local_witness_approx(m8, &delta(2, 5), &x, 1e-9).unwrap();
        assert!(a.value_residual <= 1e-9 && a.leibniz_residual <= 1e-9);
    }
}
