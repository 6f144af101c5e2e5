//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always show.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};

use ghz_core::bounds::{lemma_fm_sweep, Witness};
use ghz_core::dense;
use ghz_core::state::joint_plus_one_dimension;
use ghz_core::{
    bell_classical_max, bell_delta_value, bell_quantum, bell_trig_value,
    check_infeasible_algebraic, check_infeasible_exhaustive, classify_ghz, constraint_system,
    enumerate_ghz_graphs, ks_classical_max, ks_quantum, lemma_brute_max, lemma_c_closed,
    lemma_fm_max, make_family, paradox::mermin_table, stabilizer_product, verify_stabilizers,
    ClassicalAssignment, Family, OracleAgreement, PauliWord, WeightedGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;
const CAP: u64 = 100_000_000;
const STATE_CAP: u64 = 10_000_000;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL
}

fn fam(f: Family) -> WeightedGraph {
    make_family(&f).unwrap()
}

/// Checks shared by the three worked examples.
fn paradox_exhaustive(g: &WeightedGraph, searched: u64) -> Check {
    let sys = constraint_system(g).unwrap();
    let exh = check_infeasible_exhaustive(&sys, CAP).unwrap();
    ensure!(exh.infeasible, "exhaustive search found a solution");
    ensure!(
        exh.searched == Some(searched),
        "searched {:?}, expected {searched}",
        exh.searched
    );
    let alg = check_infeasible_algebraic(&sys).unwrap();
    ensure!(alg.infeasible, "algebraic certificate missing");
    ensure!(
        alg.max_satisfied_rows == exh.max_satisfied_rows,
        "methods disagree on max rows"
    );
    Ok(())
}

fn bell_values(g: &WeightedGraph, classical: f64, quantum: f64, dim: usize) -> Check {
    let r = bell_classical_max::<f64>(g, CAP).unwrap();
    ensure!(
        close(r.classical_bound, classical),
        "Bell bound {}",
        r.classical_bound
    );
    ensure!(
        r.oracle_value.is_some_and(|v| close(v, classical)),
        "Bell brute max {:?}",
        r.oracle_value
    );
    let Some(Witness::Assignment(w)) = &r.classical_witness else {
        return Err("no Bell witness".into());
    };
    ensure!(
        close(bell_delta_value(g, w).unwrap() as f64, classical),
        "witness does not reach the bound"
    );
    let q = bell_quantum::<f64>(g, STATE_CAP, 4096).unwrap();
    ensure!(close(q.value, quantum), "Bell quantum {}", q.value);
    let dense = q.dense.ok_or("dense Bell check skipped")?;
    ensure!(
        dense.dimension == dim,
        "dense dimension {}",
        dense.dimension
    );
    ensure!(
        dense.pass && dense.max_eigenvalue <= quantum + TOL,
        "spectral max {}",
        dense.max_eigenvalue
    );
    ensure!(
        close(dense.expectation, quantum),
        "dense expectation {}",
        dense.expectation
    );
    Ok(())
}

fn criterion_1() -> Check {
    let g = fam(Family::Triangle { d: 2 });
    let c = classify_ghz(&g);
    ensure!(c.is_ghz && c.is_primary, "triangle classification {c:?}");
    let s = verify_stabilizers(&g, STATE_CAP).unwrap();
    ensure!(s.all_pass, "stabilizer report {s:?}");
    ensure!(s.x_all_eigen == Some(1), "X_V exponent {:?}", s.x_all_eigen);
    paradox_exhaustive(&g, 64)?;
    bell_values(&g, 2.0, 4.0, 8)?;
    let ks = ks_classical_max::<f64>(&g, CAP).unwrap();
    ensure!(
        close(ks.classical_bound, 3.0),
        "KS bound {}",
        ks.classical_bound
    );
    ensure!(
        ks.oracle_agreement == OracleAgreement::Agree,
        "KS brute force {:?}",
        ks.oracle_value
    );
    ensure!(
        ks.notes.iter().any(|n| n.contains("1024")),
        "KS brute force did not scan 2^10"
    );
    let q = ks_quantum::<f64>(&g, 4096).unwrap();
    ensure!(close(q.value, 5.0), "KS quantum {}", q.value);
    Ok(())
}

fn criterion_2() -> Check {
    let g = fam(Family::K4 {
        d: 4,
        a: 1,
        b: 1,
        c: 0,
    });
    let c = classify_ghz(&g);
    ensure!(c.is_ghz && c.is_primary, "classification {c:?}");
    let table = mermin_table(&g).unwrap();
    let expected: [&[&str]; 5] = [
        &["X", "Z^3", "Z", "Z^0"],
        &["Z^3", "X", "Z^2", "Z^3"],
        &["Z", "Z^2", "X", "Z"],
        &["Z^0", "Z^3", "Z", "X"],
        &["X^†", "X^†", "X^†", "X^†"],
    ];
    for (row, want) in table.rows.iter().zip(expected) {
        ensure!(
            row.operators == want,
            "row {:?}, expected {want:?}",
            row.operators
        );
    }
    let values: Vec<_> = table.rows.iter().map(|r| r.value.as_str()).collect();
    ensure!(
        values == ["+1", "+1", "+1", "+1", "-1"],
        "row values {values:?}"
    );
    ensure!(table.pairwise_commuting, "table rows do not commute");
    paradox_exhaustive(&g, 65_536)?;
    bell_values(&g, 3.0, 5.0, 256)?;
    let bound: f64 = lemma_c_closed(5, 4).unwrap();
    ensure!(close(bound, 4.0), "C(5,4) = {bound}");
    let ks = ks_classical_max::<f64>(&g, 1).unwrap();
    ensure!(
        close(ks.classical_bound, 4.0),
        "KS bound {}",
        ks.classical_bound
    );
    let q = ks_quantum::<f64>(&g, 4096).unwrap();
    ensure!(
        close(q.value, 6.0) && ks.classical_bound < q.value,
        "KS quantum {}",
        q.value
    );
    Ok(())
}

fn criterion_3() -> Check {
    let g = fam(Family::K4 {
        d: 6,
        a: 1,
        b: 1,
        c: 1,
    });
    let c = classify_ghz(&g);
    ensure!(c.is_ghz, "not GHZ: {:?}", c.failure_reasons);
    ensure!(
        c.is_weakly_primary && !c.is_primary,
        "primary flags {} {}",
        c.is_primary,
        c.is_weakly_primary
    );
    paradox_exhaustive(&g, 1_679_616)?;
    bell_values(&g, 3.0, 5.0, 1296)
}

fn criterion_4() -> Check {
    for d in [2u32, 4, 6, 8] {
        for dedup in [false, true] {
            let graphs: Vec<_> = enumerate_ghz_graphs(3, d, dedup, CAP).unwrap().collect();
            ensure!(
                graphs.len() == 1,
                "n=3 d={d} dedup={dedup}: {} graphs",
                graphs.len()
            );
            ensure!(
                graphs[0].edge_weights() == vec![d / 2; 3],
                "n=3 d={d}: {:?}",
                graphs[0].edge_weights()
            );
        }
    }
    for d in [3u32, 5, 7] {
        for n in 2..=4 {
            let count = enumerate_ghz_graphs(n, d, false, CAP).unwrap().count();
            ensure!(
                count == 0,
                "n={n} d={d}: {count} GHZ graphs in odd dimension"
            );
        }
    }
    let mut checked = 0;
    for d in 2..=6u32 {
        for n in 2..=4 {
            for g in enumerate_ghz_graphs(n, d, false, CAP).unwrap() {
                let s = verify_stabilizers(&g, STATE_CAP).unwrap();
                ensure!(s.all_pass && s.x_all_eigen == Some(d / 2), "{g:?}: {s:?}");
                let all: Vec<_> = (0..n).collect();
                let product = stabilizer_product(&g, &all).unwrap();
                let want = PauliWord::from_parts(d, d / 2, vec![1; n], vec![0; n]).unwrap();
                ensure!(product == want, "{g:?}: product {product}");
                checked += 1;
            }
        }
    }
    ensure!(checked > 0, "no GHZ graphs enumerated");
    Ok(())
}

/// Direct maximum of `f` on `{θ, …, dθ}^n` in plain f64.
fn f_max(n: usize, d: u32) -> f64 {
    let theta = 2.0 * PI / d as f64;
    let mut digits = vec![0u32; n];
    let mut best = f64::NEG_INFINITY;
    loop {
        let sum: u32 = digits.iter().sum();
        let v = digits
            .iter()
            .map(|&k| (k as f64 * theta).cos())
            .sum::<f64>()
            - (sum as f64 * theta).cos();
        best = best.max(v);
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            digits[i] += 1;
            if digits[i] < d {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn lemma_agrees(n: usize, d: u32) -> Check {
    let closed: f64 = lemma_c_closed(n, d).map_err(|e| format!("C({n},{d}): {e}"))?;
    let fm: f64 = lemma_fm_max(n, d).map_err(|e| format!("F_m({n},{d}): {e}"))?;
    let brute = lemma_brute_max::<f64>(n, d, CAP).unwrap().classical_bound;
    ensure!(
        close(closed, fm) && close(closed, brute),
        "n={n} d={d}: closed {closed}, F_m {fm}, brute {brute}"
    );
    let np1 = (n + 1) as f64;
    if 2 * n >= d as usize {
        let s = (PI / d as f64).sin();
        let special = np1 - d as f64 * s * s;
        ensure!(
            close(special, closed),
            "n={n} d={d}: n >= d/2 form {special}"
        );
    }
    if (d as usize).is_multiple_of(2 * (n + 1)) {
        let special = np1 * (PI / np1).cos();
        ensure!(
            close(special, closed),
            "n={n} d={d}: integral λ form {special}"
        );
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut grid = Vec::new();
    for n in 2..=6 {
        for d in (2..=12).step_by(2) {
            grid.push((n, d));
        }
    }
    // every further (n, d) with even d <= 64 and d^n <= 10^7
    for d in (2..=64u32).step_by(2) {
        let mut n = 2;
        while (d as u64).pow(n as u32) <= 10_000_000 {
            if !grid.contains(&(n, d)) {
                grid.push((n, d));
            }
            n += 1;
        }
    }
    for &(n, d) in &grid {
        lemma_agrees(n, d)?;
    }
    for (n, d) in [(2, 6), (3, 4), (3, 8), (4, 6), (5, 10)] {
        let closed: f64 = lemma_c_closed(n, d).unwrap();
        ensure!(
            close(closed, f_max(n, d)),
            "independent brute force disagrees at n={n} d={d}"
        );
    }
    let spots = [
        (3, 2, 2.0),
        (3, 8, 2.0 * 2f64.sqrt()),
        (4, 4, 3.0),
        (5, 4, 4.0),
    ];
    for (n, d, want) in spots {
        let v: f64 = lemma_c_closed(n, d).unwrap();
        ensure!(close(v, want), "C({n},{d}) = {v}, expected {want}");
    }
    Ok(())
}

fn ghz_samples() -> Vec<WeightedGraph> {
    let mut out: Vec<_> = [
        Family::Triangle { d: 2 },
        Family::Triangle { d: 4 },
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
    .into_iter()
    .map(fam)
    .collect();
    out.extend(enumerate_ghz_graphs(4, 6, true, CAP).unwrap());
    out
}

fn random_graph(rng: &mut ChaCha8Rng, d: u32, n: usize) -> WeightedGraph {
    let edges: Vec<_> = ghz_core::graph::edge_pairs(n)
        .map(|(u, v)| (u, v, rng.gen_range(0..d)))
        .filter(|e| e.2 != 0)
        .collect();
    WeightedGraph::from_edges(d, n, &edges).unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, d: u32, n: usize) -> PauliWord {
    let x = (0..n).map(|_| rng.gen_range(0..d)).collect();
    let z = (0..n).map(|_| rng.gen_range(0..d)).collect();
    PauliWord::from_parts(d, rng.gen_range(0..d), x, z).unwrap()
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);

    // (a) delta form against trig form
    for g in ghz_samples() {
        let (d, n) = (g.d(), g.n());
        for _ in 0..1000 {
            let a = (0..n).map(|_| rng.gen_range(0..d)).collect();
            let b = (0..n).map(|_| rng.gen_range(0..d)).collect();
            let asg = ClassicalAssignment::new(d, a, b).unwrap();
            let delta = bell_delta_value(&g, &asg).unwrap() as f64;
            let trig: f64 = bell_trig_value(&g, &asg).unwrap();
            ensure!(close(delta, trig), "(a) {asg:?}: delta {delta} trig {trig}");
        }
    }

    // (b) word product against matrix product
    for _ in 0..100 {
        let d = rng.gen_range(2..=6);
        let n = rng.gen_range(1..=2);
        let (p, q) = (random_word(&mut rng, d, n), random_word(&mut rng, d, n));
        let mp = dense::to_matrix::<f64>(&p, 4096).unwrap();
        let mq = dense::to_matrix::<f64>(&q, 4096).unwrap();
        let mpq = dense::to_matrix::<f64>(&p.multiply(&q).unwrap(), 4096).unwrap();
        let dev = dense::max_abs_diff(&dense::matmul(&mp, &mq), &mpq);
        ensure!(dev <= 1e-12, "(b) {p} · {q}: deviation {dev}");
    }

    // (c) every graph where the count is small, random graphs elsewhere
    for d in 2..=16u32 {
        for n in 1..=8usize {
            let dim = (d as u64).pow(n as u32);
            if dim > 256 {
                continue;
            }
            let edges = n * (n.saturating_sub(1)) / 2;
            let count = (d as u64).checked_pow(edges as u32).unwrap_or(u64::MAX);
            let graphs: Vec<WeightedGraph> = if count * dim * dim <= 1 << 22 {
                let mut weights = vec![0u32; edges];
                let mut all = Vec::new();
                loop {
                    let mut g = WeightedGraph::new(d, n).unwrap();
                    for ((u, v), &w) in ghz_core::graph::edge_pairs(n).zip(&weights) {
                        g = g.with_weight(u, v, w).unwrap();
                    }
                    all.push(g);
                    if !ghz_core::zd::increment(&mut weights, d) {
                        break;
                    }
                }
                all
            } else {
                let samples = if dim > 64 { 4 } else { 24 };
                (0..samples).map(|_| random_graph(&mut rng, d, n)).collect()
            };
            for g in graphs {
                let dimension: f64 = joint_plus_one_dimension(&g, 256).unwrap();
                ensure!(
                    (dimension - 1.0).abs() <= TOL,
                    "(c) {g:?}: joint eigenspace dimension {dimension}"
                );
            }
        }
    }

    // (d) Δ_m sign pattern on the swept grid
    for d in (2..=64u32).step_by(2) {
        for n in 1..=20 {
            if d as usize <= 2 * n {
                continue;
            }
            let sweep = lemma_fm_sweep::<f64>(n, d).unwrap();
            ensure!(
                sweep.sign_pattern_holds(TOL),
                "(d) n={n} d={d}: {:?}",
                sweep.increments
            );
        }
    }
    Ok(())
}

fn ghz(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghz"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("ghz binary runs")
}

fn criterion_7() -> Check {
    let dir = tempfile::tempdir().unwrap();
    let files = [
        ("triangle.json", fam(Family::Triangle { d: 2 })),
        (
            "k4_d4.json",
            fam(Family::K4 {
                d: 4,
                a: 1,
                b: 1,
                c: 0,
            }),
        ),
        (
            "path.json",
            WeightedGraph::from_edges(2, 3, &[(0, 1, 1), (1, 2, 1)]).unwrap(),
        ),
    ];
    for (name, g) in &files {
        std::fs::write(dir.path().join(name), g.to_json()).unwrap();
    }
    let runs: &[&[&str]] = &[
        &["check", "triangle.json"],
        &["check", "path.json"],
        &["--format", "text", "check", "k4_d4.json"],
        &["enumerate", "3", "2"],
        &["enumerate", "4", "4", "--dedup"],
        &["enumerate", "9", "2", "--cap", "1000"],
        &["paradox", "triangle.json", "--method", "both"],
        &["paradox", "k4_d4.json", "--method", "exhaustive"],
        &["paradox", "k4_d4.json", "--subset", "0,1,2,3"],
        &["bell", "triangle.json"],
        &["bell", "k4_d4.json"],
        &["ks", "triangle.json"],
        &["ks", "k4_d4.json", "--cap", "1000"],
        &["lemma", "3", "8"],
        &["lemma", "6", "12", "--cap", "1000"],
        &["--format", "text", "lemma", "4", "4"],
        &["state-verify", "triangle.json", "--dump"],
        &["state-verify", "path.json"],
    ];
    for args in runs {
        let first = ghz(dir.path(), args);
        let second = ghz(dir.path(), args);
        ensure!(
            first.status.code() == second.status.code(),
            "{args:?}: exit codes {:?} and {:?}",
            first.status.code(),
            second.status.code()
        );
        ensure!(
            !first.stdout.is_empty() || !first.stderr.is_empty(),
            "{args:?}: no output"
        );
        ensure!(
            first.stdout == second.stdout,
            "{args:?}: stdout differs between runs"
        );
        ensure!(
            first.stderr == second.stderr,
            "{args:?}: stderr differs between runs"
        );
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 triangle d=2 end to end", criterion_1),
        ("2 K4 family d=4", criterion_2),
        ("3 K4 family d=6", criterion_3),
        ("4 enumeration claims", criterion_4),
        ("5 lemma triple agreement", criterion_5),
        ("6 property suites", criterion_6),
        ("7 CLI determinism", criterion_7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {:?}", e.downcast_ref::<String>())));
        match outcome {
            Ok(()) => println!("criterion {name} ... PASS"),
            Err(why) => {
                failed += 1;
                println!("criterion {name} ... FAIL: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
