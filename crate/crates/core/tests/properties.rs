use ghz_core::bounds::lemma_fm_sweep;
use ghz_core::dense::{self, max_abs_diff};
use ghz_core::state::joint_plus_one_dimension;
use ghz_core::{
    bell_delta_value, bell_trig_value, check_infeasible_algebraic, check_infeasible_exhaustive,
    classify_ghz, constraint_system, enumerate_ghz_graphs, make_family, subgraph_paradox,
    ClassicalAssignment, Family, PauliWord, PhaseState, WeightedGraph,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(d: u32, n: usize) -> impl Strategy<Value = PauliWord> {
    (
        0..d,
        prop::collection::vec(0..d, n),
        prop::collection::vec(0..d, n),
    )
        .prop_map(move |(p, x, z)| PauliWord::from_parts(d, p, x, z).unwrap())
}

fn sized_words(k: usize) -> impl Strategy<Value = Vec<PauliWord>> {
    (2u32..=6, 1usize..=3).prop_flat_map(move |(d, n)| prop::collection::vec(word(d, n), k))
}

fn graph() -> impl Strategy<Value = WeightedGraph> {
    (2u32..=6, 2usize..=5).prop_flat_map(|(d, n)| {
        prop::collection::vec(0..d, n * (n - 1) / 2).prop_map(move |w| {
            let edges: Vec<_> = ghz_core::graph::edge_pairs(n)
                .zip(w)
                .filter(|&(_, w)| w != 0)
                .map(|((u, v), w)| (u, v, w))
                .collect();
            WeightedGraph::from_edges(d, n, &edges).unwrap()
        })
    })
}

fn random_word(rng: &mut ChaCha8Rng, d: u32, n: usize) -> PauliWord {
    let mut draw = || (0..n).map(|_| rng.gen_range(0..d)).collect::<Vec<_>>();
    let x = draw();
    let z = draw();
    PauliWord::from_parts(d, rng.gen_range(0..d), x, z).unwrap()
}

proptest! {
    #[test]
    fn multiplication_is_associative(ws in sized_words(3)) {
        let left = ws[0].multiply(&ws[1]).unwrap().multiply(&ws[2]).unwrap();
        let right = ws[0].multiply(&ws[1].multiply(&ws[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn d_th_power_is_a_phase(ws in sized_words(1)) {
        let p = ws[0].power(ws[0].d() as u64);
        prop_assert!(p.is_phase_only());
    }

    #[test]
    fn adjoint_inverts(ws in sized_words(1)) {
        prop_assert!(ws[0].multiply(&ws[0].adjoint()).unwrap().is_identity());
    }

    #[test]
    fn commutation_phase_is_antisymmetric(ws in sized_words(2)) {
        let d = ws[0].d();
        let c12 = ws[0].commutation_phase(&ws[1]).unwrap();
        let c21 = ws[1].commutation_phase(&ws[0]).unwrap();
        prop_assert_eq!((c12 + c21) % d, 0);
        // P Q = ω^c Q P
        let pq = ws[0].multiply(&ws[1]).unwrap();
        let qp = ws[1].multiply(&ws[0]).unwrap();
        prop_assert_eq!(pq, PauliWord::scalar(d, ws[0].n(), c12).multiply(&qp).unwrap());
    }

    #[test]
    fn parse_inverts_display(ws in sized_words(1)) {
        let text = ws[0].to_string();
        prop_assert_eq!(PauliWord::parse(&text, ws[0].d()).unwrap(), ws[0].clone());
    }

    #[test]
    fn apply_word_composes(g in graph(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (d, n) = (g.d(), g.n());
        let w1 = random_word(&mut rng, d, n);
        let w2 = random_word(&mut rng, d, n);
        let s = ghz_core::build_state(&g, 1 << 20).unwrap();
        let stepwise = s.apply_word(&w1).unwrap().apply_word(&w2).unwrap();
        let joint = s.apply_word(&w2.multiply(&w1).unwrap()).unwrap();
        prop_assert_eq!(stepwise, joint);
    }

    #[test]
    fn handshake_identity(g in graph()) {
        prop_assert_eq!(g.degrees().iter().sum::<u64>(), 2 * g.total_weight());
    }

    #[test]
    fn subgraphs_compose(g in graph(), mask in any::<u32>(), inner in any::<u32>()) {
        let outer: Vec<usize> = (0..g.n()).filter(|v| mask >> v & 1 == 1).collect();
        prop_assume!(!outer.is_empty());
        let pick: Vec<usize> = (0..outer.len()).filter(|i| inner >> i & 1 == 1).collect();
        prop_assume!(!pick.is_empty());
        let nested = g.subgraph(&outer).unwrap().subgraph(&pick).unwrap();
        let direct: Vec<usize> = pick.iter().map(|&i| outer[i]).collect();
        prop_assert_eq!(nested, g.subgraph(&direct).unwrap());
    }

    #[test]
    fn vertex_stabilizers_fix_the_state(g in graph()) {
        let s = ghz_core::build_state(&g, 1 << 20).unwrap();
        for v in 0..g.n() {
            let gv = ghz_core::vertex_stabilizer(&g, v).unwrap();
            prop_assert_eq!(s.eigenvalue_of(&gv).unwrap(), Some(0));
        }
    }
}

#[test]
fn symbolic_product_matches_dense_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let d = rng.gen_range(2..=6);
        let n = rng.gen_range(1..=2);
        let a = random_word(&mut rng, d, n);
        let b = random_word(&mut rng, d, n);
        let ma = dense::to_matrix::<f64>(&a, 4096).unwrap();
        let mb = dense::to_matrix::<f64>(&b, 4096).unwrap();
        let mab = dense::to_matrix::<f64>(&a.multiply(&b).unwrap(), 4096).unwrap();
        assert!(
            max_abs_diff(&dense::matmul(&ma, &mb), &mab) < 1e-12,
            "{a} · {b}"
        );
    }
}

#[test]
fn state_application_matches_dense_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let d = rng.gen_range(2..=5);
        let n = rng.gen_range(1..=3);
        let w = random_word(&mut rng, d, n);
        let s = PhaseState::uniform(d, n, 1 << 12).unwrap();
        let moved = s.apply_word(&w).unwrap().to_dense::<f64>(1 << 12).unwrap();
        let direct =
            dense::to_matrix::<f64>(&w, 1 << 12).unwrap() * s.to_dense::<f64>(1 << 12).unwrap();
        assert!((moved - direct).iter().all(|c| c.norm() < 1e-12));
    }
}

#[test]
fn enumerated_ghz_graphs_have_half_weight() {
    for (n, d) in [(3, 2), (5, 2), (3, 4), (4, 4), (3, 6), (4, 6)] {
        let mut count = 0;
        for g in enumerate_ghz_graphs(n, d, false, 1 << 24).unwrap() {
            assert_eq!(g.total_weight() % d as u64, (d / 2) as u64);
            assert!(classify_ghz(&g).is_ghz);
            count += 1;
        }
        assert!(count > 0, "no GHZ graphs for n={n}, d={d}");
    }
}

fn ghz_samples() -> Vec<WeightedGraph> {
    let mut out: Vec<_> = [
        Family::Triangle { d: 2 },
        Family::Triangle { d: 6 },
        Family::K4 {
            d: 4,
            a: 1,
            b: 1,
            c: 0,
        },
        Family::K4 {
            d: 6,
            a: 1,
            b: 1,
            c: 1,
        },
        Family::OddLoop { n: 5 },
        Family::Complete4j3 { j: 1 },
    ]
    .iter()
    .map(|f| make_family(f).unwrap())
    .collect();
    out.extend(enumerate_ghz_graphs(4, 4, true, 1 << 24).unwrap().take(20));
    out
}

#[test]
fn delta_and_trig_forms_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let graphs = ghz_samples();
    for i in 0..1000 {
        let g = &graphs[i % graphs.len()];
        let (d, n) = (g.d(), g.n());
        let a = (0..n).map(|_| rng.gen_range(0..d)).collect();
        let b = (0..n).map(|_| rng.gen_range(0..d)).collect();
        let asg = ClassicalAssignment::new(d, a, b).unwrap();
        let delta = bell_delta_value(g, &asg).unwrap() as f64;
        let trig: f64 = bell_trig_value(g, &asg).unwrap();
        assert!((delta - trig).abs() < 1e-9, "{asg:?}: {delta} vs {trig}");
    }
}

#[test]
fn joint_eigenspace_is_one_dimensional() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let d = rng.gen_range(2..=5u32);
        let n = rng.gen_range(1..=3usize);
        if (d as u64).pow(n as u32) > 256 {
            continue;
        }
        let edges: Vec<_> = ghz_core::graph::edge_pairs(n)
            .map(|(u, v)| (u, v, rng.gen_range(0..d)))
            .filter(|e| e.2 != 0)
            .collect();
        let g = WeightedGraph::from_edges(d, n, &edges).unwrap();
        let dim: f64 = joint_plus_one_dimension(&g, 256).unwrap();
        assert!((dim - 1.0).abs() < 1e-9, "{g:?}: {dim}");
    }
}

#[test]
fn increments_change_sign_once() {
    for d in (2..=24).step_by(2) {
        for n in 2..=8 {
            let sweep = lemma_fm_sweep::<f64>(n, d).unwrap();
            assert!(sweep.sign_pattern_holds(1e-9), "n={n}, d={d}");
        }
    }
}

#[test]
fn exhaustive_and_algebraic_agree() {
    for g in ghz_samples()
        .iter()
        .filter(|g| (g.d() as u64).pow(2 * g.n() as u32) <= 1 << 22)
    {
        let sys = constraint_system(g).unwrap();
        let alg = check_infeasible_algebraic(&sys).unwrap();
        let exh = check_infeasible_exhaustive(&sys, 1 << 22).unwrap();
        assert!(alg.infeasible && exh.infeasible);
        assert_eq!(alg.max_satisfied_rows, exh.max_satisfied_rows);
        // without the product row the system is satisfiable
        let open = sys.without_product_row();
        assert!(
            !check_infeasible_exhaustive(&open, 1 << 22)
                .unwrap()
                .infeasible
        );
    }
    let g = make_family(&Family::K4 {
        d: 4,
        a: 1,
        b: 1,
        c: 0,
    })
    .unwrap();
    for sub in g.find_ghz_subgraphs(3, 4).unwrap() {
        let sys = subgraph_paradox(&g, &sub).unwrap();
        assert!(
            check_infeasible_exhaustive(&sys, 1 << 22)
                .unwrap()
                .infeasible
        );
        assert!(check_infeasible_algebraic(&sys).unwrap().infeasible);
    }
}

#[test]
fn no_ghz_graph_on_four_qubits() {
    let mut it = enumerate_ghz_graphs(4, 2, false, 1 << 10).unwrap();
    assert!(it.next().is_none());
    assert_eq!(it.scanned(), 64);
}
