use locent::closed_form::closed_le_gw;
use locent::localize::{
    average_entanglement, cut_negativities, maximize_le, post_measurement, MeasurementBasis,
    MeasurementProblem, SeedBases,
};
use locent::qcore::{negativity, partial_trace, pure_negativity, Tripartition};
use locent::states::{haar_pure, make_gw, sample_gw_params, stream_rng};
use proptest::prelude::*;

fn tripartition(n: usize, n_b: usize, m: usize) -> Tripartition {
    Tripartition::contiguous(n, n_b, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn outcome_probabilities_sum_to_one(
        seed in any::<u64>(),
        n in 3usize..=5,
        theta in 0.0..std::f64::consts::PI,
        phi in 0.0..std::f64::consts::TAU,
    ) {
        let psi = haar_pure(n, &mut stream_rng(seed, 0)).unwrap();
        let tri = tripartition(n, 1, 1);
        let basis = MeasurementBasis::uniform(1, theta, phi).unwrap();
        let total: f64 = (0..2)
            .map(|k| post_measurement(&psi, &tri, &basis, k).unwrap().probability)
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let rho = psi.to_density();
        let total: f64 = (0..2)
            .map(|k| post_measurement(&rho, &tri, &basis, k).unwrap().probability)
            .sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn localized_never_exceeds_smaller_cut(seed in any::<u64>(), n in 3usize..=5) {
        let psi = haar_pure(n, &mut stream_rng(seed, 1)).unwrap();
        let tri = tripartition(n, 1, 1);
        let (_, e_a1, e_a2) = cut_negativities(&psi, &tri).unwrap();
        let le = maximize_le(&psi, &tri, &SeedBases).unwrap().value;
        prop_assert!(le <= e_a1.min(e_a2) + 1e-9);
        prop_assert!(le >= -1e-12);
    }

    #[test]
    fn global_phase_changes_nothing(seed in any::<u64>(), phase in 0.0..std::f64::consts::TAU) {
        let psi = haar_pure(4, &mut stream_rng(seed, 2)).unwrap();
        let rotated = psi.with_global_phase(phase);
        let tri = tripartition(4, 1, 1);
        let basis = MeasurementBasis::uniform(1, 0.7, 1.3).unwrap();
        let a = average_entanglement(&psi, &tri, &basis).unwrap();
        let b = average_entanglement(&rotated, &tri, &basis).unwrap();
        prop_assert!((a - b).abs() < 1e-12);
        let c = pure_negativity(&psi, &[0, 2]).unwrap();
        let d = pure_negativity(&rotated, &[0, 2]).unwrap();
        prop_assert!((c - d).abs() < 1e-12);
    }

    #[test]
    fn gw_average_is_basis_independent(
        seed in any::<u64>(),
        n in 3usize..=6,
        theta in 0.0..std::f64::consts::PI,
        phi in 0.0..std::f64::consts::TAU,
    ) {
        let p = sample_gw_params(n, &mut stream_rng(seed, 3), false);
        let psi = make_gw(&p).unwrap();
        let tri = tripartition(n, 1, 1);
        let basis = MeasurementBasis::uniform(1, theta, phi).unwrap();
        let e = average_entanglement(&psi, &tri, &basis).unwrap();
        prop_assert!((e - closed_le_gw(&p, &tri).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn pure_and_mixed_routes_agree(seed in any::<u64>(), n in 2usize..=5, mask in 1usize..31) {
        let psi = haar_pure(n, &mut stream_rng(seed, 4)).unwrap();
        let cut: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        prop_assume!(!cut.is_empty() && cut.len() < n);
        let a = pure_negativity(&psi, &cut).unwrap();
        let b = negativity(&psi.to_density(), &cut).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn objective_matches_average_of_canonical_basis(
        seed in any::<u64>(),
        params in prop::collection::vec(-10.0..10.0f64, 4),
    ) {
        let psi = haar_pure(5, &mut stream_rng(seed, 5)).unwrap();
        let tri = tripartition(5, 2, 1);
        let problem = MeasurementProblem::new(&psi, &tri).unwrap();
        let basis = MeasurementBasis::canonical(&params);
        let a = problem.objective(&params);
        let b = problem.average_entanglement(&basis).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn reduced_states_have_unit_trace(seed in any::<u64>(), keep in prop::collection::btree_set(0usize..4, 1..4)) {
        let psi = haar_pure(4, &mut stream_rng(seed, 6)).unwrap();
        let keep: Vec<usize> = keep.into_iter().collect();
        let r = partial_trace(&psi.to_density(), &keep).unwrap();
        prop_assert!((r.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(r.validate().is_ok());
    }
}
