//! Randomized 2-local exploration on `M8`: for random antisymmetric `∇` and
//! random points `x, y`, look for one derivation matching `∇` at both points.
//! Infeasible instances are evidence only, not proofs of anything general.

use serde::Serialize;

use super::malcev::M8;
use crate::error::Result;
use crate::linalg::scalar::{self, Vector};
use crate::nary::{multi_point_witness, LinearMap};
use crate::sampling;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfeasibleInstance {
    pub trial: usize,
    pub seed: u64,
    pub map: Vec<Vec<String>>,
    pub x: Vec<String>,
    pub y: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExploreReport {
    pub master_seed: u64,
    pub trials: usize,
    pub feasible: usize,
    pub infeasible: usize,
    pub trial_seeds: Vec<u64>,
    pub infeasible_instances: Vec<InfeasibleInstance>,
    pub note: &'static str,
}

/// Draws one trial from its own seed.
pub fn trial_instance(seed: u64) -> (LinearMap, Vector, Vector) {
    let mut rng = sampling::rng(seed);
    let nabla = sampling::antisymmetric(&mut rng, 8);
    let x = sampling::small_vector(&mut rng, 8);
    let y = sampling::small_vector(&mut rng, 8);
    (nabla, x, y)
}

pub fn two_point_feasible(m8: &M8, nabla: &LinearMap, x: &[scalar::Rational], y: &[scalar::Rational]) -> Result<bool> {
    let constraints = vec![(x.to_vec(), nabla.apply(x)?), (y.to_vec(), nabla.apply(y)?)];
    Ok(multi_point_witness(&m8.der, &constraints)?.is_some())
}

pub fn explore_2local(trials: usize, seed: u64) -> Result<ExploreReport> {
    let m8 = M8::shared();
    let seeds = sampling::derive_seeds(seed, trials);
    let mut report = ExploreReport {
        master_seed: seed,
        trials,
        feasible: 0,
        infeasible: 0,
        trial_seeds: seeds.clone(),
        infeasible_instances: Vec::new(),
        note: "randomized evidence only; infeasible instances are not a proof",
    };
    for (trial, &s) in seeds.iter().enumerate() {
        let (nabla, x, y) = trial_instance(s);
        if two_point_feasible(m8, &nabla, &x, &y)? {
            report.feasible += 1;
        } else {
            report.infeasible += 1;
            report.infeasible_instances.push(InfeasibleInstance {
                trial,
                seed: s,
                map: nabla.matrix().to_strings(),
                x: scalar::vector_to_strings(&x),
                y: scalar::vector_to_strings(&y),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a = explore_2local(5, 9).unwrap();
        let b = explore_2local(5, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.feasible + a.infeasible, 5);
    }

    #[test]
    fn derivations_are_always_feasible() {
        let m8 = M8::shared();
        let d = m8.base.clone();
        let mut rng = sampling::rng(4);
        let x = sampling::small_vector(&mut rng, 8);
        let y = sampling::small_vector(&mut rng, 8);
        assert!(two_point_feasible(m8, &d, &x, &y).unwrap());
    }

    #[test]
    fn infeasible_instances_replay() {
        let r = explore_2local(20, 1).unwrap();
        for inst in &r.infeasible_instances {
            let (nabla, x, y) = trial_instance(inst.seed);
            assert!(!two_point_feasible(M8::shared(), &nabla, &x, &y).unwrap());
        }
    }
}
