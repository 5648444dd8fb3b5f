use naryder::filippov::{build_filippov, local_certificate, LocalCertificate};
use naryder::linalg::scalar::{self, frac, Rational, Vector};
use naryder::linalg::{solve, Matrix, Subspace};
use naryder::nary::local::antisymmetric_space;
use naryder::nary::{
    is_derivation, locder_upper_bound, multi_point_witness, orbit_subspace, DerivationSpace, LinearMap, NaryAlgebra,
};
use naryder::octonion::frame::UnitSearch;
use naryder::octonion::malcev::{params_roundtrip, params_to_matrix, M8DerivationParams, M8};
use naryder::octonion::witness::{constructive_local_witness_approx, constructive_local_witness_exact};
use naryder::sampling;
use naryder::Error;
use proptest::prelude::*;

fn small_q() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| frac(p, q))
}

fn vector(d: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(small_q(), d)
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        // mostly small integers so that rank deficiency is common
        proptest::collection::vec(
            prop_oneof![3 => (-2i64..=2).prop_map(scalar::int), 1 => small_q()],
            r * c,
        )
        .prop_map(move |e| Matrix::from_entries(r, c, e).unwrap())
    })
}

/// Random algebra of arity 2 or 3 and dimension 3 or 4 with sparse integer
/// structure constants.
fn algebra() -> impl Strategy<Value = NaryAlgebra> {
    (2usize..=3, 3usize..=4, any::<u64>()).prop_map(|(n, d, seed)| {
        use rand::Rng;
        let mut rng = sampling::rng(seed);
        let mut a = NaryAlgebra::new(n, d).unwrap();
        for t in a.increasing_tuples() {
            if rng.gen_bool(0.5) {
                let v: Vector = (0..d)
                    .map(|_| scalar::int(if rng.gen_bool(0.3) { rng.gen_range(-1..=1) } else { 0 }))
                    .collect();
                a.set_product(&t, v).unwrap();
            }
        }
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_nullity(m in matrix()) {
        prop_assert_eq!(m.rank() + Subspace::nullspace(&m).dim(), m.cols());
    }

    #[test]
    fn rref_idempotent(m in matrix()) {
        let r = m.rref().reduced;
        prop_assert_eq!(r.rref().reduced, r);
    }

    #[test]
    fn solve_consistent_rhs(m in matrix(), seed in any::<u64>()) {
        let v = sampling::small_vector(&mut sampling::rng(seed), m.cols());
        let b = m.mul_vec(&v).unwrap();
        let w = solve(&m, &b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&w).unwrap(), b);
    }

    #[test]
    fn canonical_subspaces(vs in proptest::collection::vec(vector(4), 1..4), k in small_q()) {
        // rescaled and reordered generators plus a redundant combination span the same space
        let s = Subspace::span(4, &vs).unwrap();
        let mut ws: Vec<Vector> = vs.iter().rev().map(|v| scalar::scale(&(k.clone() + scalar::int(10)), v)).collect();
        ws.push(vs.iter().fold(scalar::zeros(4), |acc, v| scalar::add(&acc, v)));
        let t = Subspace::span(4, &ws).unwrap();
        prop_assert_eq!(s.basis(), t.basis());
        prop_assert_eq!(&s, &t);
    }

    #[test]
    fn derivation_basis_is_consistent(a in algebra()) {
        let der = DerivationSpace::compute(&a);
        for b in der.basis_maps() {
            prop_assert!(is_derivation(&a, b).unwrap());
        }
    }

    #[test]
    fn bracket_negates_under_transposition(a in algebra(), seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = sampling::rng(seed);
        let n = a.arity();
        let args: Vec<Vector> = (0..n).map(|_| sampling::small_vector(&mut rng, a.dim())).collect();
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let mut swapped = args.clone();
        swapped.swap(i, j);
        let lhs = a.bracket(&args).unwrap();
        let rhs = a.bracket(&swapped).unwrap();
        prop_assert!(scalar::is_zero(&scalar::add(&lhs, &rhs)));
    }

    #[test]
    fn global_derivation_is_its_own_witness(a in algebra(), seed in any::<u64>(), k in 1usize..4) {
        let der = DerivationSpace::compute(&a);
        let mut rng = sampling::rng(seed);
        let coeffs = sampling::small_vector(&mut rng, der.dim());
        let d = der.combine(&coeffs).unwrap();
        let cs: Vec<(Vector, Vector)> = (0..k)
            .map(|_| {
                let x = sampling::small_vector(&mut rng, a.dim());
                let y = d.apply(&x).unwrap();
                (x, y)
            })
            .collect();
        let t = multi_point_witness(&der, &cs).unwrap().expect("feasible");
        prop_assert!(t.replay(&der).unwrap());
    }

    #[test]
    fn probe_bound_is_monotone(a in algebra(), seed in any::<u64>()) {
        let der = DerivationSpace::compute(&a);
        let mut rng = sampling::rng(seed);
        let p: Vec<Vector> = (0..3).map(|_| sampling::small_vector(&mut rng, a.dim())).collect();
        let small = locder_upper_bound(&der, &p[..1]).unwrap();
        let large = locder_upper_bound(&der, &p).unwrap();
        prop_assert!(large.dim() <= small.dim());
        prop_assert!(large.is_subspace_of(&small).unwrap());
        prop_assert!(der.space().is_subspace_of(&large).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn filippov_orbits_are_orthogonal(m in 4usize..=6, x in vector(6)) {
        let a = build_filippov(m).unwrap();
        let der = DerivationSpace::compute(&a);
        let x = &x[..m];
        let orbit = orbit_subspace(&der, x).unwrap();
        for v in orbit.basis_vectors() {
            prop_assert!(num_traits::Zero::is_zero(&scalar::dot(&v, x)));
        }
    }

    #[test]
    fn filippov_certificate_matches_antisymmetry(m in 4usize..=6, seed in any::<u64>(), perturb in any::<bool>()) {
        let der = DerivationSpace::compute(&build_filippov(m).unwrap());
        let mut rng = sampling::rng(seed);
        let map = if perturb { sampling::non_antisymmetric(&mut rng, m) } else { sampling::antisymmetric(&mut rng, m) };
        let cert = local_certificate(&der, &map).unwrap();
        prop_assert_eq!(matches!(cert, LocalCertificate::Derivation(_)), map.is_antisymmetric());
    }

    #[test]
    fn filippov_single_point_witness_is_the_map(m in 4usize..=6, seed in any::<u64>()) {
        let der = DerivationSpace::compute(&build_filippov(m).unwrap());
        let mut rng = sampling::rng(seed);
        let b = sampling::antisymmetric(&mut rng, m);
        let x = sampling::small_vector(&mut rng, m);
        let t = multi_point_witness(&der, &[(x.clone(), b.apply(&x).unwrap())]).unwrap().expect("feasible");
        prop_assert_eq!(t.witness.apply(&x).unwrap(), b.apply(&x).unwrap());
        prop_assert!(der.contains(&b).unwrap());
    }

    #[test]
    fn m8_params_give_derivations(alpha in proptest::collection::vec(small_q(), 21)) {
        let m8 = M8::shared();
        let p = M8DerivationParams::from_alpha(std::array::from_fn(|i| alpha[i].clone()));
        let m = params_to_matrix(&p, m8).unwrap();
        prop_assert!(is_derivation(&m8.algebra, &LinearMap::new(m.clone()).unwrap()).unwrap());
        prop_assert_eq!(params_roundtrip(&m).unwrap(), p);
    }

    #[test]
    fn m8_constructive_witness(seed in any::<u64>()) {
        let m8 = M8::shared();
        let mut rng = sampling::rng(seed);
        let nabla = sampling::antisymmetric(&mut rng, 8);
        let mut x = sampling::pattern_unit(&mut rng, &[1, 2, 3, 4, 5, 6, 7]);
        x[0] = sampling::small_rational(&mut rng);
        let y = nabla.apply(&x).unwrap();
        let oracle = multi_point_witness(&m8.der, &[(x.clone(), y.clone())]).unwrap().is_some();
        prop_assert!(oracle);
        match constructive_local_witness_exact(m8, &nabla, &x, UnitSearch::default()) {
            Ok(w) => {
                prop_assert!(is_derivation(&m8.algebra, &w.map).unwrap());
                prop_assert_eq!(w.map.apply(&x).unwrap(), y);
            }
            Err(Error::NotRationalSquare { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
        let a = constructive_local_witness_approx(m8, &nabla, &x, 1e-9).unwrap();
        prop_assert!(a.value_residual <= 1e-9 && a.leibniz_residual <= 1e-9);
    }
}

#[test]
fn m8_probe_bound_is_antisymmetric() {
    let m8 = M8::shared();
    let probes = naryder::nary::local::probes_as_vectors(&naryder::nary::default_probes(8));
    let bound = locder_upper_bound(&m8.der, &probes).unwrap();
    assert_eq!(bound.dim(), 28);
    assert_eq!(bound, antisymmetric_space(8));
}
