use locent::localize::{cut_negativities, maximize_le, MultiStart, StartLabel};
use locent::qcore::Tripartition;
use locent::states::{make_dicke, DickeParams};

#[test]
fn dicke_localized_below_bipartite_with_shrinking_gap() {
    let strategy = MultiStart::default();
    let mut last_gap = f64::INFINITY;
    for n in 3..=10 {
        let tri = Tripartition::contiguous(n, 1, 1).unwrap();
        for k in 1..n {
            let psi = make_dicke(&DickeParams {
                n_qubits: n,
                n_excited: k,
            })
            .unwrap();
            let (e_ab, _, _) = cut_negativities(&psi, &tri).unwrap();
            let r = maximize_le(&psi, &tri, &strategy).unwrap();
            assert!(e_ab >= r.value - 1e-9);
            let z = r.start_value(StartLabel::SigmaZ).unwrap();
            assert!(
                z >= r.value - 1e-9,
                "n {n} k {k}: sigma-z {z} vs {}",
                r.value
            );
            if k == n / 2 {
                let gap = e_ab - r.value;
                assert!(gap < last_gap, "n {n}: {gap} >= {last_gap}");
                last_gap = gap;
            }
        }
    }
}
