use std::path::Path;

use ghz_core::bounds::{lemma_fm_sweep, BellQuantum, FmSweep, KsQuantum};
use ghz_core::paradox::mermin_table;
use ghz_core::{
    bell_classical_bound, bell_classical_max, bell_quantum, build_state,
    check_infeasible_algebraic, check_infeasible_exhaustive, classify_ghz, constraint_system,
    enumerate_ghz_graphs, genuineness, ks_classical_max, ks_quantum, lemma_brute_max,
    lemma_c_closed, subgraph_paradox, verify_stabilizers, BoundKind, BoundReport, Error, GraphFile,
    InfeasibilityCertificate, OracleAgreement, Result, WeightedGraph, Witness,
};
use serde_json::Value;

use crate::output::{object, to_value};
use crate::{Command, MethodArg, Outcome, RunArgs};

fn load(path: &Path) -> Result<WeightedGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    WeightedGraph::from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn single(report: Value, ok: bool) -> Outcome {
    Outcome {
        report,
        lines: None,
        code: if ok { 0 } else { 1 },
    }
}

pub fn run(cmd: &Command, cfg: &RunArgs) -> Result<Outcome> {
    match cmd {
        Command::Check { graph } => {
            let report = classify_ghz(&load(graph)?);
            Ok(single(to_value(&report), report.is_ghz))
        }
        Command::Enumerate { n, d, dedup } => enumerate(*n, *d, *dedup, cfg),
        Command::Paradox {
            graph,
            method,
            subset,
        } => paradox(&load(graph)?, *method, subset.as_deref(), cfg),
        Command::Bell { graph } => bell(&load(graph)?, cfg),
        Command::Ks { graph } => ks(&load(graph)?, cfg),
        Command::Lemma { n, d } => lemma(*n, *d, cfg),
        Command::StateVerify { graph, dump } => state_verify(&load(graph)?, *dump, cfg),
    }
}

fn enumerate(n: usize, d: u32, dedup: bool, cfg: &RunArgs) -> Result<Outcome> {
    let mut graphs = enumerate_ghz_graphs(n, d, dedup, cfg.cap)?;
    let mut lines: Vec<Value> = graphs
        .by_ref()
        .map(|g| to_value(&GraphFile::from_graph(&g)))
        .collect();
    let summary = object(vec![
        ("n", n.into()),
        ("d", d.into()),
        ("dedup", dedup.into()),
        ("count", lines.len().into()),
        ("scanned", graphs.scanned().into()),
    ]);
    lines.push(object(vec![("summary", summary)]));
    Ok(Outcome {
        report: Value::Null,
        lines: Some(lines),
        code: 0,
    })
}

fn paradox(
    g: &WeightedGraph,
    method: MethodArg,
    subset: Option<&[usize]>,
    cfg: &RunArgs,
) -> Result<Outcome> {
    let report = classify_ghz(g);
    if !report.is_ghz {
        let reasons: Vec<_> = report.failure_reasons.iter().map(|r| r.code()).collect();
        return Err(Error::NotGhz(reasons.join(", ")));
    }
    let (sys, table_graph) = match subset {
        Some(vs) => (subgraph_paradox(g, vs)?, g.subgraph(vs)?),
        None => (constraint_system(g)?, g.clone()),
    };
    let mut certs: Vec<InfeasibilityCertificate> = Vec::new();
    if matches!(method, MethodArg::Algebraic | MethodArg::Both) {
        certs.push(check_infeasible_algebraic(&sys)?);
    }
    if matches!(method, MethodArg::Exhaustive | MethodArg::Both) {
        certs.push(check_infeasible_exhaustive(&sys, cfg.cap)?);
    }
    let agreement = (certs.len() == 2).then(|| {
        certs[0].infeasible == certs[1].infeasible
            && certs[0].max_satisfied_rows == certs[1].max_satisfied_rows
    });
    let table = mermin_table(&table_graph)?;
    let rendered: Vec<Value> = table
        .to_string()
        .lines()
        .map(|l| l.trim_end().into())
        .collect();
    let rows: Vec<Value> = sys.to_string().lines().map(Value::from).collect();
    let ok = certs.iter().all(|c| c.infeasible) && agreement != Some(false);
    let out = object(vec![
        ("d", g.d().into()),
        ("n", g.n().into()),
        ("vertices", to_value(&sys.vertices)),
        ("system", rows.into()),
        ("certificates", to_value(&certs)),
        ("agreement", to_value(&agreement)),
        (
            "mermin_table",
            object(vec![
                ("rows", to_value(&table.rows)),
                ("pairwise_commuting", table.pairwise_commuting.into()),
                ("rendered", rendered.into()),
            ]),
        ),
        ("genuineness", to_value(&genuineness(&table_graph)?)),
    ]);
    Ok(single(out, ok))
}

fn bell(g: &WeightedGraph, cfg: &RunArgs) -> Result<Outcome> {
    let mut classical = match bell_classical_max::<f64>(g, cfg.cap) {
        Ok(r) => r,
        Err(Error::CapExceeded { required, .. }) => {
            let mut r = bell_classical_bound::<f64>(g)?;
            r.notes.push(format!(
                "brute force skipped: {required} assignments above cap"
            ));
            r
        }
        Err(e) => return Err(e),
    };
    classical.recheck(cfg.tolerance);
    let quantum: Option<BellQuantum<f64>> =
        match bell_quantum::<f64>(g, cfg.state_cap, cfg.dense_cap) {
            Ok(q) => Some(q),
            Err(Error::CapExceeded { required, .. }) => {
                classical.notes.push(format!(
                    "quantum value skipped: {required} amplitudes above state cap"
                ));
                None
            }
            Err(e) => return Err(e),
        };
    classical.quantum_value = quantum.as_ref().map(|q| q.value);
    let ok = classical.oracle_agreement != OracleAgreement::Disagree
        && quantum
            .as_ref()
            .and_then(|q| q.dense.as_ref())
            .is_none_or(|dense| dense.pass);
    let out = object(vec![
        ("classical", to_value(&classical)),
        ("quantum", to_value(&quantum)),
    ]);
    Ok(single(out, ok))
}

fn ks(g: &WeightedGraph, cfg: &RunArgs) -> Result<Outcome> {
    let mut classical = ks_classical_max::<f64>(g, cfg.cap)?;
    classical.recheck(cfg.tolerance);
    let quantum: KsQuantum<f64> = ks_quantum(g, cfg.dense_cap)?;
    classical.quantum_value = Some(quantum.value);
    let ok = classical.oracle_agreement != OracleAgreement::Disagree;
    let out = object(vec![
        ("classical", to_value(&classical)),
        ("quantum", to_value(&quantum)),
    ]);
    Ok(single(out, ok))
}

fn lemma(n: usize, d: u32, cfg: &RunArgs) -> Result<Outcome> {
    let even = d.is_multiple_of(2);
    let sweep: Option<FmSweep<f64>> = if even {
        Some(lemma_fm_sweep(n, d)?)
    } else {
        None
    };
    let mut report = match lemma_brute_max::<f64>(n, d, cfg.cap) {
        Ok(r) => r,
        Err(Error::CapExceeded { required, .. }) => {
            let Some(sweep) = &sweep else {
                return Err(Error::CapExceeded {
                    what: "lemma lattice",
                    required,
                    cap: cfg.cap as u128,
                });
            };
            BoundReport {
                kind: BoundKind::Lemma,
                n,
                d,
                classical_bound: lemma_c_closed(n, d)?,
                classical_witness: Some(Witness::Lattice(sweep.point(sweep.delta))),
                quantum_value: None,
                oracle_value: None,
                oracle_agreement: OracleAgreement::Skipped,
                notes: vec![format!(
                    "brute force skipped: {required} lattice points above cap"
                )],
            }
        }
        Err(e) => return Err(e),
    };
    report.recheck(cfg.tolerance);
    let closed: Option<f64> = if even {
        Some(lemma_c_closed(n, d)?)
    } else {
        None
    };
    let sweep_ok = sweep.as_ref().is_none_or(|s| {
        closed.is_some_and(|c| (s.max - c).abs() <= cfg.tolerance)
            && s.sign_pattern_holds(cfg.tolerance)
    });
    let ok = report.oracle_agreement != OracleAgreement::Disagree && sweep_ok;
    let out = object(vec![
        ("report", to_value(&report)),
        ("closed_form", to_value(&closed)),
        (
            "sweep",
            match &sweep {
                Some(s) => object(vec![
                    ("values", to_value(&s.values)),
                    ("increments", to_value(&s.increments)),
                    ("max", s.max.into()),
                    ("argmax", s.argmax.into()),
                    ("delta", s.delta.into()),
                    ("floor_lambda", s.low.into()),
                    (
                        "sign_pattern_holds",
                        s.sign_pattern_holds(cfg.tolerance).into(),
                    ),
                ]),
                None => Value::Null,
            },
        ),
    ]);
    Ok(single(out, ok))
}

fn state_verify(g: &WeightedGraph, dump: bool, cfg: &RunArgs) -> Result<Outcome> {
    let report = verify_stabilizers(g, cfg.state_cap)?;
    let mut out = to_value(&report);
    if dump {
        let amplitudes: Vec<Value> = build_state(g, cfg.state_cap)?
            .dump()
            .into_iter()
            .map(|(basis, e)| object(vec![("basis", to_value(&basis)), ("exponent", e.into())]))
            .collect();
        out["amplitudes"] = amplitudes.into();
    }
    Ok(single(out, report.all_pass))
}
