//! Fast kernels and closed forms against literal reference computations.

use locent::closed_form::*;
use locent::localize::{
    average_entanglement, cut_negativities, maximize_le, post_measurement,
    post_measurement_amplitudes, MeasurementBasis, MultiStart,
};
use locent::noise::{apply_phase_flip, kraus_probs, NoiseSpec};
use locent::oracle::*;
use locent::qcore::{negativity, pure_negativity, Tripartition};
use locent::states::*;
use locent::C64;
use rand::Rng;

fn random_angles(rng: &mut StateRng, n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| {
            (
                rng.random_range(0.0..std::f64::consts::PI),
                rng.random_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect()
}

#[test]
fn gw_post_measurement_matches_term_by_term_coefficients() {
    let mut rng = stream_rng(11, 0);
    for draw in 0..200 {
        let n = 3 + draw % 4;
        let n_b = 1 + draw % 2;
        let p = sample_gw_params(n, &mut rng, false);
        let psi = make_gw(&p).unwrap();
        let b: Vec<usize> = (0..n_b).collect();
        let a: Vec<usize> = (n_b..n).collect();
        let tri = Tripartition::new(n, &a[..1], &a[1..], &b).unwrap();
        let angles = random_angles(&mut rng, n_b);
        let basis = MeasurementBasis::new(angles.clone()).unwrap();
        let probs = gw_outcome_probabilities(&p.a, &angles).unwrap();
        let n_a = n - n_b;
        for k in 0..1 << n_b {
            let f = gw_outcome_coefficients(&p.a, &angles, k).unwrap();
            let v = post_measurement_amplitudes(&psi, &tri, &basis, k).unwrap();
            let mut expected = vec![C64::new(0.0, 0.0); 1 << n_a];
            expected[0] = f[0];
            for i in 0..n_a {
                expected[1 << (n_a - 1 - i)] = f[i + 1];
            }
            for (x, y) in v.iter().zip(&expected) {
                assert!((x - y).norm() < 1e-12, "draw {draw} outcome {k}");
            }
            let pm = post_measurement(&psi, &tri, &basis, k).unwrap();
            assert!((pm.probability - probs[k]).abs() < 1e-12);
        }
    }
}

#[test]
fn wclass_post_measurement_matches_coefficients() {
    let mut rng = stream_rng(12, 0);
    let tri = Tripartition::new(3, &[1], &[2], &[0]).unwrap();
    for _ in 0..200 {
        let p = sample_wclass_params(&mut rng, false);
        let psi = make_wclass(&p).unwrap();
        let (th, ph) = random_angles(&mut rng, 1)[0];
        let basis = MeasurementBasis::new(vec![(th, ph)]).unwrap();
        for k in 0..2 {
            let f = wclass_outcome_coefficients(&p.a, th, ph, k).unwrap();
            let v = post_measurement_amplitudes(&psi, &tri, &basis, k).unwrap();
            let expected = [f[0], f[2], f[1], C64::new(0.0, 0.0)];
            for (x, y) in v.iter().zip(&expected) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }
}

#[test]
fn closed_forms_match_brute_force() {
    let mut rng = stream_rng(13, 0);
    let strategy = MultiStart::default();
    for draw in 0..60 {
        let n = 3 + draw % 3;
        let tri = Tripartition::contiguous(n, 1, 1).unwrap();

        let a0 = C64::new(rng.random_range(0.1..1.0), rng.random_range(-1.0..1.0));
        let a1 = C64::new(rng.random_range(0.1..1.0), 0.0);
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        let gp = GghzParams {
            n_qubits: n,
            a0: a0 / norm,
            a1: a1 / norm,
        };
        let psi = make_gghz(&gp).unwrap();
        let le = maximize_le(&psi, &tri, &strategy).unwrap().value;
        assert!((le - closed_le_gghz(&gp, &tri).unwrap()).abs() < 1e-8);
        let rho = psi.to_density();
        assert!((negativity(&rho, tri.b()).unwrap() - gghz_negativity(&gp)).abs() < 1e-10);

        let wp = sample_gw_params(n, &mut rng, false);
        let psi = make_gw(&wp).unwrap();
        let (e_ab, e_a1, e_a2) = cut_negativities(&psi, &tri).unwrap();
        let (c_ab, c_a1, c_a2) = gw_cut_negativities(&wp, &tri).unwrap();
        assert!((e_ab - c_ab).abs() < 1e-10);
        assert!((e_a1 - c_a1).abs() < 1e-10);
        assert!((e_a2 - c_a2).abs() < 1e-10);
        let basis = MeasurementBasis::new(random_angles(&mut rng, 1)).unwrap();
        let fixed = average_entanglement(&psi, &tri, &basis).unwrap();
        assert!((fixed - closed_le_gw(&wp, &tri).unwrap()).abs() < 1e-10);
    }
    let tri = Tripartition::new(3, &[1], &[2], &[0]).unwrap();
    for _ in 0..40 {
        let p = sample_wclass_params(&mut rng, false);
        let psi = make_wclass(&p).unwrap();
        let le = maximize_le(&psi, &tri, &strategy).unwrap().value;
        assert!((le - closed_le_wclass(&p, &tri).unwrap()).abs() < 1e-8);
        let (e0, e1, e2) = wclass_negativities(&p);
        assert!((pure_negativity(&psi, &[0]).unwrap() - e0).abs() < 1e-10);
        assert!((pure_negativity(&psi, &[1]).unwrap() - e1).abs() < 1e-10);
        assert!((pure_negativity(&psi, &[2]).unwrap() - e2).abs() < 1e-10);
    }
}

#[test]
fn dicke_closed_form_uses_sigma_z() {
    for n in 3..=8 {
        for k in 1..n {
            let p = DickeParams {
                n_qubits: n,
                n_excited: k,
            };
            let psi = make_dicke(&p).unwrap();
            let tri = Tripartition::contiguous(n, 1, 1).unwrap();
            let z = average_entanglement(&psi, &tri, &MeasurementBasis::sigma_z(1)).unwrap();
            assert!((z - closed_le_dicke(&p, &tri).unwrap()).abs() < 1e-10);
            let e = pure_negativity(&psi, &[0]).unwrap();
            assert!((e - dicke_single_qubit_negativity(n, k)).abs() < 1e-10);
        }
    }
}

#[test]
fn phase_flip_matches_explicit_kraus_sum() {
    let mut rng = stream_rng(14, 0);
    for draw in 0..30 {
        let n = 2 + draw % 4;
        let psi = haar_pure(n, &mut rng).unwrap();
        let q = rng.random_range(0.0..1.0);
        let spec = if draw % 2 == 0 {
            NoiseSpec::markovian(q).unwrap()
        } else {
            NoiseSpec::non_markovian(q, rng.random_range(0.0..1.0)).unwrap()
        };
        let (p0, p1) = kraus_probs(&spec);
        let fast = apply_phase_flip(&psi, &spec).unwrap();
        let slow = kraus_sum_phase_flip(&psi, p0, p1).unwrap();
        assert!((fast.matrix() - slow.matrix()).camax() < 1e-14);
    }
}
