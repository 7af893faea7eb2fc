use std::path::{Path, PathBuf};
use std::process::Command;

use dds_cli::model::{
    compile, document_from_csp, parse_model, to_toml, ConstraintDecl, ModelDocument, Relation,
    VariableDecl,
};
use dds_cli::report::RunReport;
use dds_core::models::{
    brute_force_count, chromatic_oracle, coloring_csp, erdos_renyi, saw_csp, ColoringSpec, WalkSpec,
};
use dds_core::{dds_count, Count, Heuristic};
use proptest::prelude::*;

fn models_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/models")
}

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut full = vec!["dds"];
    full.extend_from_slice(args);
    let code = dds_cli::run(full, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json_report(args: &[&str]) -> RunReport {
    let mut a = args.to_vec();
    a.extend(["--report", "json"]);
    let (code, out) = run(&a);
    assert_eq!(code, 0, "{out}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn intro_model_counts_six_with_one_decomposition() {
    let path = models_dir().join("intro.toml");
    let r = json_report(&[
        "count",
        "--model",
        path.to_str().unwrap(),
        "--engine",
        "dds",
    ]);
    assert_eq!(r.count, "6");
    assert!(r.exact);
    assert_eq!(r.decomposition_nodes, 1);
    assert_eq!(r.engine, "dds");
    assert_eq!(r.heuristic, "maxdeg-ff");
}

#[test]
fn shipped_models_agree_with_oracle() {
    let mut seen = 0;
    for entry in std::fs::read_dir(models_dir()).unwrap() {
        let path = entry.unwrap().path();
        let doc = parse_model(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let truth = brute_force_count(&compile(&doc).unwrap().csp)
            .unwrap()
            .to_string();
        for engine in ["dfs", "dds"] {
            for h in ["input", "ff", "maxdeg", "maxdeg-ff"] {
                let r = json_report(&[
                    "count",
                    "--model",
                    path.to_str().unwrap(),
                    "--engine",
                    engine,
                    "--heuristic",
                    h,
                ]);
                assert_eq!(r.count, truth, "{} {engine} {h}", path.display());
                assert_eq!(
                    r.nodes,
                    r.choice_nodes + r.decomposition_nodes + r.solutions_found + r.fails
                );
            }
        }
        seen += 1;
    }
    assert!(seen >= 6);
}

#[test]
fn every_constraint_type_has_an_example() {
    let mut kinds = std::collections::BTreeSet::new();
    for entry in std::fs::read_dir(models_dir()).unwrap() {
        let doc = parse_model(&std::fs::read_to_string(entry.unwrap().path()).unwrap()).unwrap();
        kinds.extend(doc.constraints.iter().map(ConstraintDecl::kind));
    }
    assert_eq!(
        kinds.into_iter().collect::<Vec<_>>(),
        ["alldifferent", "linear", "neq", "regular", "slide", "table"]
    );
}

#[test]
fn undefined_variable_is_named() {
    let text = "[[variables]]\nname = \"a\"\nrange = [0, 1]\n\n[[constraints]]\ntype = \"neq\"\nx = \"a\"\ny = \"ghost\"\n";
    let err = parse_model(text).unwrap_err().to_string();
    assert!(
        err.contains("ghost") && err.contains("constraint 0"),
        "{err}"
    );
}

#[test]
fn diagnostics_for_bad_documents() {
    let err = parse_model("[[variables]]\nname = \"a\"\nrange = [0, 1\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("line"), "{err}");
    let err = parse_model("[[variables]]\nname = \"a\"\nrange = [0, 1]\n[[constraints]]\ntype = \"linear\"\ncoeffs = [1, 2]\nvars = [\"a\"]\nrel = \"eq\"\nrhs = 1\n")
        .unwrap_err()
        .to_string();
    assert!(
        err.contains("arity") || err.contains("coefficients"),
        "{err}"
    );
    let err = parse_model(
        "[[variables]]\nname = \"a\"\nrange = [0, 1]\n[[constraints]]\ntype = \"regular\"\nvars = [\"a\"]\nstates = 1\nstart = 3\nfinals = [0]\ntransitions = []\n",
    )
    .unwrap_err()
    .to_string();
    assert!(err.contains("automaton"), "{err}");
    let err = parse_model("[[constraints]]\ntype = \"bogus\"\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("bogus"), "{err}");
}

#[test]
fn no_constraints_counts_product() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("free.toml");
    std::fs::write(&path, "[[variables]]\nname = \"a\"\nrange = [0, 2]\n\n[[variables]]\nname = \"b\"\nvalues = [1, 5, 9, 12]\n").unwrap();
    for engine in ["dfs", "dds"] {
        let r = json_report(&[
            "count",
            "--model",
            path.to_str().unwrap(),
            "--engine",
            engine,
        ]);
        assert_eq!(r.count, "12");
    }
}

#[test]
fn report_count_matches_library() {
    let csp = coloring_csp(&ColoringSpec::new(erdos_renyi(12, 0.25, 5), 4));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.toml");
    std::fs::write(&path, to_toml(&document_from_csp(&csp, None))).unwrap();
    let lib = dds_count::<Count>(
        &csp.build().unwrap(),
        Heuristic::MaxDegreeThenFirstFail,
        None,
    );
    let r = json_report(&["count", "--model", path.to_str().unwrap(), "--no-limit"]);
    assert_eq!(r.count, lib.count.to_string());
    assert_eq!(r.nodes, lib.stats.nodes);
    let back: RunReport = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
    assert_eq!(back, r);
}

#[test]
fn limit_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.toml");
    std::fs::write(
        &path,
        to_toml(&document_from_csp(
            &coloring_csp(&ColoringSpec::new(erdos_renyi(8, 0.3, 1), 3)),
            None,
        )),
    )
    .unwrap();
    let truth: u64 = chromatic_oracle(&erdos_renyi(8, 0.3, 1), 3)
        .unwrap()
        .try_into()
        .unwrap();
    assert!(truth > 10);
    for engine in ["dfs", "dds"] {
        let r = json_report(&[
            "count",
            "--model",
            path.to_str().unwrap(),
            "--engine",
            engine,
            "--limit",
            "10",
        ]);
        assert!(!r.exact);
        let c: u64 = r.count.parse().unwrap();
        assert!(c >= 10 && c <= truth);
    }
    let r = json_report(&[
        "count",
        "--model",
        path.to_str().unwrap(),
        "--limit",
        &truth.to_string(),
    ]);
    assert!(r.exact);
    assert_eq!(r.count, truth.to_string());
}

#[test]
fn enumerate_lists_real_solutions() {
    let path = models_dir().join("intro.toml");
    for engine in ["dfs", "dds"] {
        let r = json_report(&[
            "enumerate",
            "--model",
            path.to_str().unwrap(),
            "--engine",
            engine,
            "--max-solutions",
            "100",
        ]);
        let sols = r.solutions.unwrap();
        assert_eq!(sols.len(), 6);
        assert_eq!(r.variables.unwrap(), ["a", "b", "c", "d"]);
        for s in &sols {
            for i in 0..4 {
                for j in i + 1..4 {
                    assert_ne!(s[i], s[j]);
                }
            }
        }
        let r = json_report(&[
            "enumerate",
            "--model",
            path.to_str().unwrap(),
            "--engine",
            engine,
            "--max-solutions",
            "4",
        ]);
        assert_eq!(r.solutions.unwrap().len(), 4);
        assert!(!r.exact);
    }
    let (code, out) = run(&[
        "enumerate",
        "--model",
        path.to_str().unwrap(),
        "--max-solutions",
        "2",
    ]);
    assert_eq!(code, 0);
    assert!(out.lines().next().unwrap().starts_with("a="));
}

#[test]
fn trace_dot_file() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("t.dot");
    let path = models_dir().join("intro.toml");
    let (code, _) = run(&[
        "count",
        "--model",
        path.to_str().unwrap(),
        "--trace-dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("class=\"decomposition\"").count(), 1);
    let (code, _) = run(&[
        "count",
        "--model",
        path.to_str().unwrap(),
        "--engine",
        "dfs",
        "--trace-dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        std::fs::read_to_string(&dot)
            .unwrap()
            .matches("class=\"decomposition\"")
            .count(),
        0
    );
}

#[test]
fn gen_coloring_is_reproducible_and_correct() {
    let args = [
        "gen-coloring",
        "--nodes",
        "9",
        "--edge-prob",
        "0.35",
        "--colors",
        "3",
        "--seed",
        "11",
    ];
    let (c1, a) = run(&args);
    let (c2, b) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.toml");
    std::fs::write(&path, &a).unwrap();
    let r = json_report(&["count", "--model", path.to_str().unwrap()]);
    assert_eq!(
        r.count,
        chromatic_oracle(&erdos_renyi(9, 0.35, 11), 3)
            .unwrap()
            .to_string()
    );
}

#[test]
fn gen_saw_counts_walks() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.toml");
    let (code, _) = run(&[
        "gen-saw",
        "--length",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let r = json_report(&["count", "--model", path.to_str().unwrap()]);
    assert_eq!(r.count, "36");
    assert_ne!(run(&["gen-saw", "--length", "4", "--bound", "2"]).0, 0);
}

#[test]
fn bench_table_shape() {
    let (code, out) = run(&[
        "bench",
        "--nodes",
        "10",
        "--edge-prob",
        "0.2,0.4",
        "--instances",
        "3",
        "--limit",
        "10000",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("rel. RT") && out.contains("ST size"));
    assert_eq!(
        out.lines()
            .filter(|l| l.trim_start().starts_with("0.20"))
            .count(),
        4
    );
    let (code, out) = run(&[
        "bench",
        "--nodes",
        "8",
        "--edge-prob",
        "0.3",
        "--instances",
        "2",
        "--report",
        "json",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v["summary"][0]["mean_tree_ratio"].as_f64().unwrap() >= 1.0);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_dds");
    let ok = Command::new(exe)
        .args(["count", "--model"])
        .arg(models_dir().join("intro.toml"))
        .output()
        .unwrap();
    assert!(ok.status.success());
    assert!(String::from_utf8_lossy(&ok.stdout).contains("count"));
    let missing = Command::new(exe)
        .args(["count", "--model", "/nonexistent.toml"])
        .output()
        .unwrap();
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nonexistent"));
    let bad = Command::new(exe)
        .args(["count", "--model", "x.toml", "--engine", "bfs"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn arb_document() -> impl Strategy<Value = ModelDocument> {
    (2usize..6)
        .prop_flat_map(|n| {
            let vars = proptest::collection::vec(
                prop_oneof![
                    (-5i64..5, 0i64..4).prop_map(|(lo, w)| (None, Some([lo, lo + w]))),
                    proptest::collection::btree_set(-9i64..9, 1..5)
                        .prop_map(|s| (Some(s.into_iter().collect()), None)),
                ],
                n,
            );
            let pick = proptest::sample::subsequence(names(n), 2..=n).prop_shuffle();
            let constraint = prop_oneof![
                pick.clone().prop_map(|v| ConstraintDecl::Neq {
                    x: v[0].clone(),
                    y: v[1].clone()
                }),
                (pick.clone(), -3i64..3, any::<bool>()).prop_map(|(vars, rhs, eq)| {
                    ConstraintDecl::Linear {
                        coeffs: (0..vars.len() as i64).map(|i| i + 1).collect(),
                        vars,
                        rel: if eq { Relation::Eq } else { Relation::Leq },
                        rhs,
                    }
                }),
                pick.clone()
                    .prop_map(|vars| ConstraintDecl::AllDifferent { vars }),
                pick.clone().prop_flat_map(|vars| {
                    let k = vars.len();
                    proptest::collection::vec(proptest::collection::vec(-3i64..3, k), 0..4)
                        .prop_map(move |tuples| ConstraintDecl::Table {
                            vars: vars.clone(),
                            tuples,
                        })
                }),
                pick.clone().prop_map(|vars| ConstraintDecl::Regular {
                    vars,
                    states: 2,
                    start: 0,
                    finals: vec![1],
                    transitions: vec![(0, 0, 1), (1, 1, 0), (1, 0, 1)],
                }),
                pick.prop_map(|vars| ConstraintDecl::Slide {
                    vars,
                    width: 2,
                    tuples: vec![vec![0, 1], vec![1, 0]]
                }),
            ];
            (vars, proptest::collection::vec(constraint, 0..5))
        })
        .prop_map(|(vars, constraints)| ModelDocument {
            variables: vars
                .into_iter()
                .enumerate()
                .map(|(i, (values, range))| VariableDecl {
                    name: format!("v{i}"),
                    values,
                    range,
                })
                .collect(),
            constraints,
        })
}

proptest! {
    #[test]
    fn documents_round_trip(doc in arb_document()) {
        let text = to_toml(&doc);
        let back = parse_model(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(back, doc);
    }

    #[test]
    fn generated_models_round_trip(seed in 0u64..1000, n in 1usize..12, p in 0.0f64..1.0, k in 1usize..5, len in 1usize..6) {
        for csp in [coloring_csp(&ColoringSpec::new(erdos_renyi(n, p, seed), k)), saw_csp(&WalkSpec::new(len))] {
            let doc = document_from_csp(&csp, None);
            let back = parse_model(&to_toml(&doc)).unwrap();
            prop_assert_eq!(&back, &doc);
            prop_assert_eq!(compile(&back).unwrap().csp, csp);
        }
    }
}
