//! The simple Filippov algebras `A_m`: `(m−1)`-ary, `m`-dimensional, with
//! `[e_1, …, ê_i, …, e_m] = (−1)^{m+i} e_i`.

use serde::Serialize;

use crate::error::{check_len, Error, Result};
use crate::linalg::scalar::{self, Vector};
use crate::nary::local::{default_probes, ProbeVector};
use crate::nary::witness::multi_point_witness;
use crate::nary::{is_derivation, DerivationSpace, LinearMap, NaryAlgebra, WitnessTrace};

pub const MIN_DIM: usize = 4;
/// Largest `m` the CLI accepts; the identity sweep grows combinatorially.
pub const MAX_DIM: usize = 9;

/// Builds `A_m`. Refuses `m < 4`, where the structure results do not apply.
pub fn build_filippov(m: usize) -> Result<NaryAlgebra> {
    if m < MIN_DIM {
        return Err(Error::Domain(format!("A_m needs m >= {MIN_DIM}, got {m}")));
    }
    let mut a = NaryAlgebra::new(m - 1, m)?;
    for i in 1..=m {
        let tuple: Vec<usize> = (0..m).filter(|&k| k + 1 != i).collect();
        let sign = if (m + i).is_multiple_of(2) { 1 } else { -1 };
        a.set_product(&tuple, scalar::scale(&scalar::int(sign), &scalar::unit(m, i - 1)))?;
    }
    Ok(a)
}

#[derive(Clone, Debug, Serialize)]
pub struct DerCharacterization {
    pub m: usize,
    pub dim: usize,
    pub expected_dim: usize,
    pub dim_ok: bool,
    /// Every computed basis map is antisymmetric (zero diagonal included).
    pub basis_antisymmetric: bool,
    /// Every `Δ_kl` is a derivation.
    pub elementary_are_derivations: bool,
}

impl DerCharacterization {
    pub fn passed(&self) -> bool {
        self.dim_ok && self.basis_antisymmetric && self.elementary_are_derivations
    }
}

/// `Der(A_m)` is exactly the antisymmetric matrices.
pub fn verify_der_characterization(m: usize) -> Result<DerCharacterization> {
    let a = build_filippov(m)?;
    let der = DerivationSpace::compute(&a);
    let expected_dim = m * (m - 1) / 2;
    let basis_antisymmetric = der.basis_maps().iter().all(LinearMap::is_antisymmetric);
    let mut elementary_are_derivations = true;
    for k in 0..m {
        for l in k + 1..m {
            if !is_derivation(&a, &LinearMap::elementary_antisymmetric(m, k, l))? {
                elementary_are_derivations = false;
            }
        }
    }
    Ok(DerCharacterization {
        m,
        dim: der.dim(),
        expected_dim,
        dim_ok: der.dim() == expected_dim,
        basis_antisymmetric,
        elementary_are_derivations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalCertificate {
    /// Every probe admits a witness and the map is itself a derivation.
    Derivation(LinearMap),
    /// First probe (in order `Ξ_1, …, Ξ_m, Ξ_1+Ξ_2, …`) with no witness.
    Counterexample(ProbeVector),
}

/// Replays the probe argument: a witness at `Ξ_k` exists iff `b_kk = 0`, and
/// at `Ξ_k + Ξ_l` iff additionally `b_kl + b_lk = 0`.
pub fn local_certificate(der: &DerivationSpace, map: &LinearMap) -> Result<LocalCertificate> {
    let d = der.algebra_dim();
    check_len("candidate map", d, map.dim())?;
    for probe in default_probes(d) {
        let x = probe.vector();
        let y = map.apply(&x)?;
        if multi_point_witness(der, &[(x, y)])?.is_none() {
            return Ok(LocalCertificate::Counterexample(probe));
        }
    }
    if !is_derivation(der.algebra(), map)? {
        return Err(Error::Internal("map passed every probe but is not a derivation".into()));
    }
    Ok(LocalCertificate::Derivation(map.clone()))
}

/// `local_certificate` on `A_m`.
pub fn local_certificate_for(m: usize, map: &LinearMap) -> Result<LocalCertificate> {
    let der = DerivationSpace::compute(&build_filippov(m)?);
    local_certificate(&der, map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TwoLocalVerdict {
    /// Entries `i` and `j` (0-based, `i <= j`) admit no common witness.
    FailPairwise {
        i: usize,
        j: usize,
    },
    /// Every pair is interpolable but no single derivation fits the table.
    FailGlobal,
    Pass(WitnessTrace),
}

/// Checks a finite table of values of a candidate 2-local derivation: first
/// every pair of entries (including an entry with itself), then the table as
/// a whole.
pub fn sampled_map_global_witness(der: &DerivationSpace, table: &[(Vector, Vector)]) -> Result<TwoLocalVerdict> {
    if table.is_empty() {
        return Err(Error::Domain("sampled table must be nonempty".into()));
    }
    for i in 0..table.len() {
        for j in i..table.len() {
            let pair = if i == j {
                vec![table[i].clone()]
            } else {
                vec![table[i].clone(), table[j].clone()]
            };
            if multi_point_witness(der, &pair)?.is_none() {
                return Ok(TwoLocalVerdict::FailPairwise { i, j });
            }
        }
    }
    Ok(match multi_point_witness(der, table)? {
        Some(t) => TwoLocalVerdict::Pass(t),
        None => TwoLocalVerdict::FailGlobal,
    })
}
