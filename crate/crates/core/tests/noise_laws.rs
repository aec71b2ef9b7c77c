use locent::bounds::{gghz_noise_scale, gw_noise_scale, nonmarkovian_factor, q_critical};
use locent::closed_form::{closed_le_gw, gghz_negativity};
use locent::localize::{cut_negativities, MultiStart};
use locent::noise::{le_noisy, NoiseSpec};
use locent::qcore::Tripartition;
use locent::states::{make_gghz, make_gw, sample_gw_params, stream_rng, GghzParams};
use locent::C64;

fn grid21() -> impl Iterator<Item = f64> {
    (0..=20).map(|i| i as f64 / 20.0)
}

#[test]
fn gghz_entanglement_scales_with_n_th_power() {
    let strategy = MultiStart::default();
    for n in 3..=5 {
        let p = GghzParams {
            n_qubits: n,
            a0: C64::new(0.6, 0.0),
            a1: C64::new(0.0, 0.8),
        };
        let psi = make_gghz(&p).unwrap();
        let tri = Tripartition::contiguous(n, 1, 1).unwrap();
        for q in grid21() {
            for spec in [
                NoiseSpec::markovian(q).unwrap(),
                NoiseSpec::non_markovian(q, 0.6).unwrap(),
            ] {
                let expected = gghz_negativity(&p) * gghz_noise_scale(&spec, n);
                let rho = locent::noise::apply_phase_flip(&psi, &spec).unwrap();
                let (e_ab, _, _) = cut_negativities(&rho, &tri).unwrap();
                assert!((e_ab - expected).abs() < 1e-9, "n {n} q {q}");
                let le = le_noisy(&psi, &tri, &spec, &strategy).unwrap().value;
                assert!(
                    (le - expected).abs() < 1e-7,
                    "n {n} q {q}: {le} vs {expected}"
                );
            }
        }
    }
}

#[test]
fn gw_localized_entanglement_scales_quadratically() {
    let strategy = MultiStart::default();
    let mut rng = stream_rng(31, 0);
    for n in 3..=5 {
        let p = sample_gw_params(n, &mut rng, false);
        let psi = make_gw(&p).unwrap();
        let tri = Tripartition::contiguous(n, 1, 1).unwrap();
        let clean = closed_le_gw(&p, &tri).unwrap();
        for q in grid21() {
            let spec = NoiseSpec::markovian(q).unwrap();
            let le = le_noisy(&psi, &tri, &spec, &strategy).unwrap().value;
            assert!(
                (le - clean * gw_noise_scale(&spec)).abs() < 1e-7,
                "n {n} q {q}"
            );
        }
    }
}

#[test]
fn non_markovian_entanglement_vanishes_then_revives() {
    let p = GghzParams {
        n_qubits: 3,
        a0: C64::new(0.5f64.sqrt(), 0.0),
        a1: C64::new(0.5f64.sqrt(), 0.0),
    };
    let psi = make_gghz(&p).unwrap();
    let tri = Tripartition::contiguous(3, 1, 1).unwrap();
    for alpha in [0.3, 0.6, 0.9, 1.0] {
        let qc = q_critical(alpha).unwrap();
        assert!(!qc.limit_only);
        assert!(nonmarkovian_factor(qc.q, alpha).unwrap() < 1e-10);
        let at_qc = NoiseSpec::non_markovian(qc.q, alpha).unwrap();
        let rho = locent::noise::apply_phase_flip(&psi, &at_qc).unwrap();
        assert!(cut_negativities(&rho, &tri).unwrap().0 < 1e-10);
        assert!(nonmarkovian_factor(1.0, alpha).unwrap() > 1e-4);
        let full = NoiseSpec::non_markovian(1.0, alpha).unwrap();
        let rho = locent::noise::apply_phase_flip(&psi, &full).unwrap();
        assert!(cut_negativities(&rho, &tri).unwrap().0 > 1e-6);
    }
    assert!(q_critical(0.0).unwrap().limit_only);
}
