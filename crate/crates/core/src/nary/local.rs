use std::collections::BTreeSet;

use super::derivation::{DerivationSpace, LinearMap};
use super::witness::orbit_subspace;
use crate::error::{check_len, Result};
use crate::linalg::scalar::{self, Vector};
use crate::linalg::{Matrix, Subspace};

/// 0/1 vector `Σ_{k ∈ support} Ξ_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProbeVector {
    support: BTreeSet<usize>,
    dim: usize,
}

impl ProbeVector {
    pub fn new(dim: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let support: BTreeSet<usize> = support.into_iter().collect();
        assert!(support.iter().all(|&k| k < dim), "probe support out of range");
        Self { support, dim }
    }

    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn vector(&self) -> Vector {
        let mut v = scalar::zeros(self.dim);
        for &k in &self.support {
            v[k] = scalar::int(1);
        }
        v
    }

    /// `"Xi_1+Xi_2"` style label, 1-based.
    pub fn label(&self) -> String {
        self.support
            .iter()
            .map(|k| format!("Xi_{}", k + 1))
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Every `Ξ_k`, then every `Ξ_k + Ξ_l` with `k < l` in lexicographic order.
pub fn default_probes(dim: usize) -> Vec<ProbeVector> {
    let mut out: Vec<ProbeVector> = (0..dim).map(|k| ProbeVector::new(dim, [k])).collect();
    for k in 0..dim {
        for l in k + 1..dim {
            out.push(ProbeVector::new(dim, [k, l]));
        }
    }
    out
}

/// All matrices `B` with `B(p) ∈ {D(p) : D ∈ Der}` for each probe `p`.
///
/// Each condition says `w·(B p) = 0` for every `w` annihilating the orbit
/// subspace at `p`, which is linear in the entries of `B`. The result contains
/// every local derivation.
pub fn locder_upper_bound(der: &DerivationSpace, probes: &[Vector]) -> Result<Subspace> {
    let d = der.algebra_dim();
    let mut rows: Vec<Vector> = Vec::new();
    for p in probes {
        check_len("probe", d, p.len())?;
        let ann = orbit_subspace(der, p)?.annihilator();
        for w in ann.basis_vectors() {
            // Σ_k w_k Σ_j B[k][j] p_j
            let mut row = scalar::zeros(d * d);
            for (k, wk) in w.iter().enumerate() {
                if num_traits::Zero::is_zero(wk) {
                    continue;
                }
                for (j, pj) in p.iter().enumerate() {
                    if !num_traits::Zero::is_zero(pj) {
                        row[k * d + j] += wk * pj;
                    }
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Ok(Subspace::full(d * d));
    }
    Ok(Subspace::nullspace(&Matrix::from_rows(d * d, rows)?))
}

/// Antisymmetric `d × d` matrices, flattened row-major.
pub fn antisymmetric_space(d: usize) -> Subspace {
    let gens: Vec<Vector> = (0..d)
        .flat_map(|i| (i + 1..d).map(move |j| (i, j)))
        .map(|(i, j)| LinearMap::elementary_antisymmetric(d, i, j).flatten())
        .collect();
    Subspace::span(d * d, &gens).expect("flattened maps have length d²")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalVerdict {
    /// No derivation agrees with the map at `point`.
    Fail { point: Vector },
    /// Every checked point has a derivation witness. A necessary condition
    /// only, unless the algebra is known to have `LocDer = Der`.
    PassOnSamples { checked: usize },
}

/// Semi-decision for local derivations: the default probes and the given
/// samples are each tested for a single-point derivation witness.
pub fn is_local_derivation(der: &DerivationSpace, map: &LinearMap, samples: &[Vector]) -> Result<LocalVerdict> {
    let d = der.algebra_dim();
    check_len("candidate map", d, map.dim())?;
    let probes = default_probes(d);
    let points = probes.iter().map(ProbeVector::vector).chain(samples.iter().cloned());
    let mut checked = 0;
    for x in points {
        check_len("sample", d, x.len())?;
        let y = map.apply(&x)?;
        if !orbit_subspace(der, &x)?.contains(&y)? {
            return Ok(LocalVerdict::Fail { point: x });
        }
        checked += 1;
    }
    Ok(LocalVerdict::PassOnSamples { checked })
}

pub fn probes_as_vectors(probes: &[ProbeVector]) -> Vec<Vector> {
    probes.iter().map(ProbeVector::vector).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::unit;
    use crate::nary::algebra::abelian;

    #[test]
    fn probe_family() {
        let p = default_probes(4);
        assert_eq!(p.len(), 4 + 6);
        assert_eq!(p[0].vector(), unit(4, 0));
        assert_eq!(p[4].label(), "Xi_1+Xi_2");
        assert_eq!(p[9].label(), "Xi_3+Xi_4");
    }

    #[test]
    fn vacuous_probe_gives_everything() {
        let der = DerivationSpace::compute(&abelian(2, 3).unwrap());
        let s = locder_upper_bound(&der, &[scalar::zeros(3)]).unwrap();
        assert_eq!(s.dim(), 9);
    }

    #[test]
    fn antisymmetric_dims() {
        assert_eq!(antisymmetric_space(4).dim(), 6);
        assert_eq!(antisymmetric_space(8).dim(), 28);
    }
}
