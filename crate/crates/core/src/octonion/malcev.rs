use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{ternary_bracket, ExactOctonion};
use crate::error::{check_len, Error, Result};
use crate::linalg::scalar::{self, Rational, Vector};
use crate::linalg::{Matrix, Subspace};
use crate::nary::algebra::{increasing_tuples, BasisProduct};
use crate::nary::derivation::derivation_violations;
use crate::nary::{DerivationSpace, LinearMap, NaryAlgebra};

/// Evaluates the ternary bracket formula directly on basis octonions, without
/// going through a stored table.
pub struct TernaryOctonionBracket;

impl BasisProduct for TernaryOctonionBracket {
    fn arity(&self) -> usize {
        3
    }

    fn dim(&self) -> usize {
        8
    }

    fn basis_product(&self, indices: &[usize]) -> Vector {
        let [i, j, k] = indices else {
            panic!("ternary bracket takes three arguments");
        };
        ternary_bracket(
            &ExactOctonion::basis(*i),
            &ExactOctonion::basis(*j),
            &ExactOctonion::basis(*k),
        )
        .to_vec()
    }
}

/// `M8`: the octonions with the ternary bracket, as a stored 3-ary algebra.
pub fn build_m8() -> Result<NaryAlgebra> {
    let mut a = NaryAlgebra::new(3, 8)?;
    for t in increasing_tuples(8, 3) {
        let v = TernaryOctonionBracket.basis_product(&t);
        let unit = |x: &Rational| x.is_zero() || x.is_one() || (-x).is_one();
        if !v.iter().all(unit) {
            return Err(Error::Internal(format!(
                "M8 structure constant outside {{-1,0,1}} at {t:?}"
            )));
        }
        a.set_product(&t, v)?;
    }
    Ok(a)
}

/// `M8`, `Der(M8)` and the base derivation, computed once per process.
pub struct M8 {
    pub algebra: NaryAlgebra,
    pub der: DerivationSpace,
    pub base: LinearMap,
}

impl M8 {
    pub fn shared() -> &'static M8 {
        static CTX: OnceLock<M8> = OnceLock::new();
        CTX.get_or_init(|| M8::build().expect("M8 construction is self-checking"))
    }

    fn build() -> Result<M8> {
        let algebra = build_m8()?;
        let der = DerivationSpace::compute(&algebra);
        let base = base_derivation();
        if !derivation_violations(&algebra, &base)?.is_empty() {
            return Err(Error::Internal("base derivation is not a derivation".into()));
        }
        let e = |i| scalar::unit(8, i);
        if !scalar::is_zero(&base.apply(&e(0))?) || base.apply(&e(1))? != e(2) {
            return Err(Error::Internal("base derivation must send e1 to 0 and e2 to e3".into()));
        }
        Ok(M8 { algebra, der, base })
    }
}

/// One element `Δ_ij + s·Δ_kl` of the listed derivation basis (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ListedDerivation {
    pub first: (usize, usize),
    pub sign: i64,
    pub second: (usize, usize),
}

impl ListedDerivation {
    pub fn to_map(&self) -> LinearMap {
        let (i, j) = self.first;
        let (k, l) = self.second;
        LinearMap::elementary_antisymmetric(8, i - 1, j - 1)
            .add(&LinearMap::elementary_antisymmetric(8, k - 1, l - 1).scale(&scalar::int(self.sign)))
            .expect("same size")
    }

    pub fn label(&self) -> String {
        let s = if self.sign > 0 { '+' } else { '-' };
        format!(
            "D{}{} {} D{}{}",
            self.first.0, self.first.1, s, self.second.0, self.second.1
        )
    }
}

const fn ld(first: (usize, usize), sign: i64, second: (usize, usize)) -> ListedDerivation {
    ListedDerivation { first, sign, second }
}

/// The 21 listed basis derivations of `M8`.
pub const LISTED_BASIS: [ListedDerivation; 21] = [
    ld((2, 3), -1, (1, 4)),
    ld((2, 4), 1, (1, 3)),
    ld((2, 5), -1, (1, 6)),
    ld((2, 6), 1, (1, 5)),
    ld((2, 7), 1, (1, 8)),
    ld((2, 8), -1, (1, 7)),
    ld((3, 4), -1, (1, 2)),
    ld((3, 5), -1, (1, 7)),
    ld((3, 6), -1, (1, 8)),
    ld((3, 7), 1, (1, 5)),
    ld((3, 8), 1, (1, 6)),
    ld((4, 5), -1, (1, 8)),
    ld((4, 6), 1, (1, 7)),
    ld((4, 7), -1, (1, 6)),
    ld((4, 8), 1, (1, 5)),
    ld((5, 6), -1, (1, 2)),
    ld((5, 7), -1, (1, 3)),
    ld((5, 8), -1, (1, 4)),
    ld((6, 7), 1, (1, 4)),
    ld((6, 8), -1, (1, 3)),
    ld((7, 8), 1, (1, 2)),
];

#[derive(Clone, Debug, Serialize)]
pub struct BasisCheck {
    /// Labels of listed elements that fail the Leibniz rule.
    pub non_derivations: Vec<String>,
    pub rank: usize,
    pub linearly_independent: bool,
    pub der_dim: usize,
    pub spans_der: bool,
}

impl BasisCheck {
    pub fn passed(&self) -> bool {
        self.non_derivations.is_empty() && self.linearly_independent && self.spans_der
    }
}

pub fn m8_basis_check(m8: &M8) -> Result<BasisCheck> {
    let mut non_derivations = Vec::new();
    let mut flat = Vec::new();
    for b in &LISTED_BASIS {
        let map = b.to_map();
        if !derivation_violations(&m8.algebra, &map)?.is_empty() {
            non_derivations.push(b.label());
        }
        flat.push(map.flatten());
    }
    let span = Subspace::span(64, &flat)?;
    Ok(BasisCheck {
        non_derivations,
        rank: span.dim(),
        linearly_independent: span.dim() == LISTED_BASIS.len(),
        der_dim: m8.der.dim(),
        spans_der: &span == m8.der.space(),
    })
}

/// `α_1..α_21` and `γ_1..γ_7` of a derivation in the standard layout: below
/// the diagonal, column 1 holds the `γ`s and the remaining lower triangle
/// holds the `α`s column by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct M8DerivationParams {
    pub alpha: [Rational; 21],
    pub gamma: [Rational; 7],
}

/// Positions `(row, col)` (0-based) of `α_1..α_21`.
fn alpha_positions() -> Vec<(usize, usize)> {
    (1..8).flat_map(|c| (c + 1..8).map(move |r| (r, c))).collect()
}

/// `γ_i` as signed sums of `α`s (1-based `α` indices).
pub const GAMMA_RELATIONS: [[(i64, usize); 3]; 7] = [
    [(-1, 7), (-1, 16), (1, 21)],
    [(1, 2), (-1, 17), (-1, 20)],
    [(-1, 1), (-1, 18), (1, 19)],
    [(1, 4), (1, 10), (1, 15)],
    [(-1, 3), (1, 11), (-1, 14)],
    [(-1, 6), (-1, 8), (1, 13)],
    [(1, 5), (-1, 9), (-1, 12)],
];

pub fn gamma_from_alpha(alpha: &[Rational; 21]) -> [Rational; 7] {
    std::array::from_fn(|g| {
        GAMMA_RELATIONS[g]
            .iter()
            .map(|&(s, a)| scalar::int(s) * &alpha[a - 1])
            .sum()
    })
}

impl M8DerivationParams {
    /// Parameters with the given `α`s and `γ`s from the relations.
    pub fn from_alpha(alpha: [Rational; 21]) -> Self {
        let gamma = gamma_from_alpha(&alpha);
        Self { alpha, gamma }
    }

    /// Antisymmetric matrix in the standard layout. Does not check the
    /// relations; see [`params_to_matrix`].
    pub fn layout_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(8, 8);
        for (g, v) in self.gamma.iter().enumerate() {
            m[(g + 1, 0)] = v.clone();
            m[(0, g + 1)] = -v.clone();
        }
        for ((r, c), v) in alpha_positions().into_iter().zip(&self.alpha) {
            m[(r, c)] = v.clone();
            m[(c, r)] = -v.clone();
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "alpha": scalar::vector_to_strings(&self.alpha),
            "gamma": scalar::vector_to_strings(&self.gamma),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            alpha: Vec<String>,
            gamma: Vec<String>,
        }
        let raw: Raw = serde_json::from_value(v.clone())?;
        if raw.alpha.len() != 21 || raw.gamma.len() != 7 {
            return Err(Error::Format("params need 21 alpha and 7 gamma entries".into()));
        }
        let alpha = scalar::vector_from_strings(&raw.alpha)?;
        let gamma = scalar::vector_from_strings(&raw.gamma)?;
        Ok(Self {
            alpha: std::array::from_fn(|i| alpha[i].clone()),
            gamma: std::array::from_fn(|i| gamma[i].clone()),
        })
    }
}

/// Reads `α` and `γ` off a derivation matrix and checks that the matrix is
/// reproduced. Fails naming the first broken condition.
pub fn params_roundtrip(m: &Matrix) -> Result<M8DerivationParams> {
    check_len("M8 matrix rows", 8, m.rows())?;
    check_len("M8 matrix cols", 8, m.cols())?;
    if !m.is_antisymmetric() {
        return Err(Error::NotM8Derivation("matrix is not antisymmetric".into()));
    }
    let alpha: [Rational; 21] = {
        let pos = alpha_positions();
        std::array::from_fn(|k| m[pos[k]].clone())
    };
    let gamma: [Rational; 7] = std::array::from_fn(|g| m[(g + 1, 0)].clone());
    let expected = gamma_from_alpha(&alpha);
    for g in 0..7 {
        if gamma[g] != expected[g] {
            return Err(Error::NotM8Derivation(format!(
                "relation gamma{} violated: entry ({},1) is {} but the alphas give {}",
                g + 1,
                g + 2,
                gamma[g],
                expected[g]
            )));
        }
    }
    let p = M8DerivationParams { alpha, gamma };
    if &p.layout_matrix() != m {
        return Err(Error::Internal("params do not reproduce the matrix".into()));
    }
    Ok(p)
}

/// Builds the matrix and checks it is a derivation of `M8`.
pub fn params_to_matrix(p: &M8DerivationParams, m8: &M8) -> Result<Matrix> {
    let expected = gamma_from_alpha(&p.alpha);
    if let Some(g) = (0..7).find(|&g| p.gamma[g] != expected[g]) {
        return Err(Error::NotM8Derivation(format!(
            "relation gamma{} violated: given {}, alphas give {}",
            g + 1,
            p.gamma[g],
            expected[g]
        )));
    }
    let m = p.layout_matrix();
    let map = LinearMap::new(m.clone())?;
    if !derivation_violations(&m8.algebra, &map)?.is_empty() {
        return Err(Error::Internal("parameter matrix fails the Leibniz rule".into()));
    }
    Ok(m)
}

/// `D°` with `D°(e1) = 0` and `D°(e2) = e3`: the parameter matrix with
/// `α1 = α19 = 1`, i.e. `Δ32 + Δ76`.
pub fn base_derivation() -> LinearMap {
    let mut alpha: [Rational; 21] = std::array::from_fn(|_| Rational::zero());
    alpha[0] = Rational::one();
    alpha[18] = Rational::one();
    LinearMap::new(M8DerivationParams::from_alpha(alpha).layout_matrix()).expect("8x8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nary::{check_anticommutativity, check_filippov, is_derivation};

    fn delta(i: usize, j: usize) -> LinearMap {
        LinearMap::elementary_antisymmetric(8, i - 1, j - 1)
    }

    #[test]
    fn m8_structure() {
        let m8 = M8::shared();
        assert_eq!(m8.der.dim(), 21);
        assert!(check_anticommutativity(&m8.algebra).is_empty());
        assert!(check_anticommutativity(&TernaryOctonionBracket).is_empty());
        assert!(!check_filippov(&m8.algebra).unwrap().is_empty());
    }

    #[test]
    fn listed_elements() {
        let m8 = M8::shared();
        let first = delta(2, 3).sub(&delta(1, 4)).unwrap();
        let last = delta(7, 8).add(&delta(1, 2)).unwrap();
        assert!(is_derivation(&m8.algebra, &first).unwrap());
        assert!(is_derivation(&m8.algebra, &last).unwrap());
        assert!(!is_derivation(&m8.algebra, &delta(1, 2)).unwrap());
        assert!(m8_basis_check(m8).unwrap().passed());
    }

    #[test]
    fn params_examples() {
        let m = delta(2, 3).sub(&delta(1, 4)).unwrap().into_matrix();
        let p = params_roundtrip(&m).unwrap();
        assert_eq!(p.alpha[0], scalar::int(-1));
        assert_eq!(p.gamma[2], scalar::int(1));
        assert_eq!(p.alpha.iter().filter(|a| !a.is_zero()).count(), 1);
        assert_eq!(p.gamma.iter().filter(|g| !g.is_zero()).count(), 1);

        let z = params_roundtrip(&Matrix::zeros(8, 8)).unwrap();
        assert!(z.alpha.iter().chain(&z.gamma).all(Zero::is_zero));

        let base = base_derivation();
        let expect = delta(3, 2).add(&delta(7, 6)).unwrap();
        assert_eq!(base, expect);
        let p = params_roundtrip(base.matrix()).unwrap();
        assert!(p.gamma.iter().all(Zero::is_zero));
        assert!(params_to_matrix(&p, M8::shared()).is_ok());
    }

    #[test]
    fn params_reject_non_derivations() {
        let err = params_roundtrip(delta(1, 2).matrix()).unwrap_err();
        assert!(err.to_string().contains("gamma1"), "{err}");
        let mut sym = Matrix::zeros(8, 8);
        sym[(0, 1)] = scalar::int(1);
        sym[(1, 0)] = scalar::int(1);
        assert!(params_roundtrip(&sym).is_err());

        let mut p = M8DerivationParams::from_alpha(std::array::from_fn(|_| Rational::zero()));
        p.gamma[4] = scalar::int(2);
        let err = params_to_matrix(&p, M8::shared()).unwrap_err();
        assert!(err.to_string().contains("gamma5"), "{err}");
    }

    #[test]
    fn every_der_basis_map_satisfies_relations() {
        for b in M8::shared().der.basis_maps() {
            params_roundtrip(b.matrix()).unwrap();
        }
    }
}
