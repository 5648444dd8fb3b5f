//! Wire format for algebras:
//! `{"arity": n, "dim": d, "brackets": [{"args": [i1,…,in], "value": {"j": "p/q"}}]}`
//! with 1-based indices and strictly increasing `args`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::NaryAlgebra;
use crate::error::{Error, Result};
use crate::linalg::scalar::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub arity: usize,
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketJson {
    pub args: Vec<usize>,
    pub value: BTreeMap<String, String>,
}

impl From<&NaryAlgebra> for AlgebraJson {
    fn from(a: &NaryAlgebra) -> Self {
        let brackets = a
            .products()
            .map(|(t, v)| BracketJson {
                args: t.iter().map(|i| i + 1).collect(),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !num_traits::Zero::is_zero(*x))
                    .map(|(j, x)| ((j + 1).to_string(), scalar::to_string(x)))
                    .collect(),
            })
            .collect();
        AlgebraJson {
            arity: a.arity(),
            dim: a.dim(),
            brackets,
        }
    }
}

impl TryFrom<&AlgebraJson> for NaryAlgebra {
    type Error = Error;

    fn try_from(j: &AlgebraJson) -> Result<Self> {
        let mut a = NaryAlgebra::new(j.arity, j.dim).map_err(|e| Error::Format(e.to_string()))?;
        let mut seen = std::collections::BTreeSet::new();
        for b in &j.brackets {
            if b.args.len() != j.arity {
                return Err(Error::Format(format!(
                    "bracket {:?} has {} arguments, arity is {}",
                    b.args,
                    b.args.len(),
                    j.arity
                )));
            }
            if b.args.iter().any(|&i| i == 0 || i > j.dim) {
                return Err(Error::Format(format!(
                    "bracket {:?} has an index outside 1..={}",
                    b.args, j.dim
                )));
            }
            if b.args.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Format(format!(
                    "bracket args {:?} are not strictly increasing",
                    b.args
                )));
            }
            if !seen.insert(b.args.clone()) {
                return Err(Error::Format(format!("bracket {:?} listed twice", b.args)));
            }
            let mut value = scalar::zeros(j.dim);
            for (k, q) in &b.value {
                let idx: usize = k
                    .parse()
                    .map_err(|_| Error::Format(format!("value key {k:?} is not an index")))?;
                if idx == 0 || idx > j.dim {
                    return Err(Error::Format(format!("value key {idx} outside 1..={}", j.dim)));
                }
                value[idx - 1] = scalar::parse(q)?;
            }
            let tuple: Vec<usize> = b.args.iter().map(|i| i - 1).collect();
            a.set_product(&tuple, value)?;
        }
        Ok(a)
    }
}

pub fn algebra_to_json(a: &NaryAlgebra) -> serde_json::Value {
    serde_json::to_value(AlgebraJson::from(a)).expect("plain data serializes")
}

pub fn algebra_from_str(s: &str) -> Result<NaryAlgebra> {
    let j: AlgebraJson = serde_json::from_str(s)?;
    NaryAlgebra::try_from(&j)
}

pub fn vector_from_json(v: &serde_json::Value) -> Result<Vec<Rational>> {
    let s: Vec<String> = serde_json::from_value(v.clone())?;
    scalar::vector_from_strings(&s)
}
