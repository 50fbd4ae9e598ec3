use std::path::PathBuf;
use std::process::{Command, Output};

fn nori(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nori")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8")
}

fn model() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models/real4.model").display().to_string()
}

#[test]
fn limit_of_the_real_system() {
    let o = nori(&["limit", "--base", "real", "--bound", "12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "base real, bound 12: 12 nodes, 23 morphisms\n\
         limit: cyclic group of order 27720\n\
         conjugation acts by inversion: yes\n"
    );
}

#[test]
fn saturate_example_by_positional_id() {
    let o = nori(&["saturate", "real-roots", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("subgroup = full, order 6"));
}

#[test]
fn normality_counterexample_concludes_with_the_witness() {
    let o = nori(&["verify", "normality-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(*lines.last().unwrap(), "N non-normal: witness b1");
    assert!(lines[lines.len() - 2].ends_with("checks passed"));
    assert!(!out.contains("FAIL"));
}

#[test]
fn sequence_check_fails_on_the_counterexample() {
    let o = nori(&["sequence-check", "--example", "normality-counterexample"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("geometric image normal: no"));
}

#[test]
fn validate_shipped_model() {
    let o = nori(&["validate", &model()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("torsor P4: size 4, saturated, 2 components"));
    assert!(out.ends_with("7 declarations valid\n"));
}

#[test]
fn fiber_product_from_model() {
    let o = nori(&["fiber-product", &model(), "sq", "sq"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("fibre product of sq and sq: size 8, |G| = 8"));
}

#[test]
fn syntax_error_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.model");
    std::fs::write(&path, "galois R = cyclic(2)\nbase B = (cyclic(2) -> R via [0 1])\n").unwrap();
    let o = nori(&["--machine", "validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["status"], "error");
    assert_eq!(doc["error"]["kind"], "SyntaxError");
    assert_eq!(doc["error"]["line"], 2);
    assert_eq!(doc["error"]["column"], 33);
}

#[test]
fn unknown_example_is_an_error() {
    let o = nori(&["saturate", "no-such-example"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("UnknownName"));
}

#[test]
fn machine_output_is_deterministic() {
    let args = ["--machine", "--seed", "11", "--cases", "8", "verify", "cyclotomic", "--p", "7"];
    let a = nori(&args);
    let b = nori(&["--jobs", "1"].iter().chain(args.iter()).copied().collect::<Vec<_>>());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    for key in ["command", "status", "result", "assertions", "lines"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    assert_eq!(doc["status"], "pass");
    assert!(doc["assertions"].as_array().unwrap().iter().any(|a| a["name"] == "randomized repointing, seed 11"));
}

#[test]
fn enumerate_listing_is_stable() {
    let a = nori(&["--machine", "enumerate", "--base", "real", "--bound", "8"]);
    let b = nori(&["--machine", "enumerate", "--base", "real", "--bound", "8"]);
    assert_eq!(a.stdout, b.stdout);
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["result"]["triples"].as_array().unwrap().len(), 8);
}

#[test]
fn export_graph_writes_tgf() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("real.tgf");
    let o = nori(&["export-graph", "--base", "real", "--bound", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let (nodes, edges) = text.split_once("#\n").unwrap();
    assert_eq!(nodes.lines().count(), 4);
    assert_eq!(edges.lines().count(), 4);
    assert!(edges.lines().any(|l| l == "4 2 ker={0,2}"));
}

#[test]
fn bad_bound_is_a_usage_error() {
    let o = nori(&["limit", "--bound", "0"]);
    assert_eq!(o.status.code(), Some(2));
}
