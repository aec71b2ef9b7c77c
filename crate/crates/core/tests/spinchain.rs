use locent::localize::{cut_negativities, SeedBases};
use locent::qcore::pure_negativity;
use locent::spinchain::*;
use locent::states::{haar_pure, stream_rng};
use nalgebra::DVector;

fn txy() -> Model {
    Model::Txy { gamma: 0.5 }
}

fn xxz() -> Model {
    Model::Xxz { delta: 0.5 }
}

#[test]
fn ground_state_is_variational_minimum() {
    for model in [txy(), xxz()] {
        let spec = SpinModelSpec::new(6, model, 0.6).unwrap();
        let h = Hamiltonian::from_spec(&spec).unwrap().dense().unwrap();
        let gs = ground_state(&spec).unwrap();
        let re = |s: &locent::PureState| {
            DVector::from_iterator(s.dim(), s.amplitudes().iter().map(|a| a.re))
        };
        let v = re(&gs.state);
        assert!(((&h * &v).dot(&v) - gs.energy).abs() < 1e-10);
        let mut rng = stream_rng(21, 0);
        for _ in 0..100 {
            let phi = haar_pure(6, &mut rng).unwrap();
            let a: Vec<_> = phi.amplitudes().to_vec();
            let hc = h.map(|x| locent::C64::new(x, 0.0));
            let av = nalgebra::DVector::from_vec(a);
            let e = (av.adjoint() * &hc * &av)[(0, 0)].re;
            assert!(gs.energy <= e + 1e-12);
        }
    }
}

#[test]
fn ordered_chain_is_translation_invariant() {
    for model in [txy(), xxz()] {
        let spec = SpinModelSpec::new(8, model, 0.4).unwrap();
        let gs = ground_state(&spec).unwrap();
        assert!(!gs.degenerate);
        let e0 = pure_negativity(&gs.state, &[0]).unwrap();
        for i in 1..8 {
            assert!((pure_negativity(&gs.state, &[i]).unwrap() - e0).abs() < 1e-9);
        }
    }
}

#[test]
fn strong_field_gives_product_state() {
    let spec = SpinModelSpec::new(8, txy(), 100.0).unwrap();
    let gs = ground_state(&spec).unwrap();
    let tri = neighbour_tripartition(8).unwrap();
    let (e_ab, e_a1, e_a2) = cut_negativities(&gs.state, &tri).unwrap();
    assert!(e_ab < 0.01 && e_a1 < 0.01 && e_a2 < 0.01);
}

#[test]
fn antiferromagnetic_window_is_entangled_and_correlated() {
    let tri = neighbour_tripartition(8).unwrap();
    let base = SpinModelSpec::new(8, txy(), 0.0).unwrap();
    let mut pts = Vec::new();
    for g in grid(0.2, 0.8, 21) {
        let p = scatter_point(&base.with_g(g), &tri, &SeedBases).unwrap();
        assert!(p.profile.e_ab > 0.1);
        assert!((p.profile.e_ab - p.profile.e_a1).abs() < 1e-9);
        assert!(p.profile.delta2() <= 1e-9);
        pts.push((p.profile.e_ab, p.profile.le));
    }
    assert!(spearman(&pts) > 0.9);
}

#[test]
fn xxz_entanglement_drops_at_saturation_field() {
    let tri = neighbour_tripartition(8).unwrap();
    let base = SpinModelSpec::new(8, xxz(), 0.0).unwrap();
    let e = |g: f64| {
        scatter_point(&base.with_g(g), &tri, &SeedBases)
            .unwrap()
            .profile
            .e_ab
    };
    assert!(e(1.3) > 0.1);
    assert!(e(1.7) < 1e-9);
    // Pauli-field reading would move the drop to g = 3
    let pauli = base.clone().with_convention(FieldConvention::Pauli);
    let ep = |g: f64| {
        scatter_point(&pauli.with_g(g), &tri, &SeedBases)
            .unwrap()
            .profile
            .e_ab
    };
    assert!(ep(2.7) > 0.1 && ep(3.3) < 1e-9);
}

#[test]
fn zero_disorder_reproduces_ordered_value() {
    let tri = neighbour_tripartition(6).unwrap();
    let base = SpinModelSpec::new(6, txy(), 0.0).unwrap();
    let d = DisorderSpec {
        mean_g: 0.5,
        sigma_g: 0.0,
        n_realizations: 40,
        seed: 3,
    };
    let (m, se) = quenched_average(&d, &base, &tri, Quantity::Le, &SeedBases).unwrap();
    let ordered = scatter_point(&base.with_g(0.5), &tri, &SeedBases).unwrap();
    assert_eq!(m, ordered.profile.le);
    assert_eq!(se, 0.0);
}

#[test]
fn disorder_average_is_deterministic_and_converges() {
    let tri = neighbour_tripartition(6).unwrap();
    let base = SpinModelSpec::new(6, txy(), 0.0).unwrap();
    let d = DisorderSpec {
        mean_g: 0.5,
        sigma_g: 0.05,
        n_realizations: 200,
        seed: 17,
    };
    let a = quenched_average(&d, &base, &tri, Quantity::EAb, &SeedBases).unwrap();
    let b = quenched_average(&d, &base, &tri, Quantity::EAb, &SeedBases).unwrap();
    assert_eq!(a, b);
    let half = |seed| {
        let h = DisorderSpec {
            n_realizations: 100,
            seed,
            ..d
        };
        quenched_average(&h, &base, &tri, Quantity::EAb, &SeedBases).unwrap()
    };
    let (x, y) = (half(101), half(202));
    assert!((x.0 - y.0).abs() < 3.0 * (x.1 * x.1 + y.1 * y.1).sqrt());
}
