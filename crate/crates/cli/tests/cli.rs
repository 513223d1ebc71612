use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn demo(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("demos").join(name)
}

fn fasncl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fasncl")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_fas_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let o = fasncl(&["solve-fas", arg(&demo("k2.json")), "--witness-out", arg(&w)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("witness_length: 1"));
    assert_eq!(std::fs::read_to_string(&w).unwrap().trim(), "[[0,1]]");

    assert_eq!(code(&fasncl(&["solve-fas", arg(&demo("strangers.json"))])), 1);
    let o = fasncl(&["solve-fas", arg(&demo("path12.json")), "--max-states", "20"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("LIMIT"));
}

#[test]
fn quotient_mode_needs_colors() {
    assert_eq!(code(&fasncl(&["solve-fas", arg(&demo("k2.json")), "--mode", "quotient"])), 3);
    let o = fasncl(&["solve-fas", arg(&demo("colored_path.json")), "--mode", "quotient", "--bidirectional"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn malformed_input_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"X": {"order": 2, "edges": [[0, 1]]}, "Y": {"order": 3, "edges": []}, "sigma": [0, 1], "sigma_prime": [1, 0]}"#).unwrap();
    assert_eq!(code(&fasncl(&["solve-fas", arg(&bad)])), 3);
    std::fs::write(&bad, "not json").unwrap();
    assert_eq!(code(&fasncl(&["solve-fas", arg(&bad)])), 3);
    assert_eq!(code(&fasncl(&["solve-fas", arg(&dir.path().join("missing.json"))])), 3);
    assert_eq!(code(&fasncl(&["no-such-command"])), 3);
}

#[test]
fn solve_ncl_variants() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("flips.json");
    let o = fasncl(&["solve-ncl", arg(&demo("triple_pair.json")), "--witness-out", arg(&w)]);
    assert_eq!(code(&o), 0);
    let flips: Vec<usize> = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(flips.len(), 3);

    assert_eq!(code(&fasncl(&["solve-ncl", arg(&demo("triple_pair_invalid.json"))])), 3);
    let o = fasncl(&["solve-ncl", arg(&demo("triple_pair.json")), "--variant", "c2e", "--edge", "2", "--head", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("witness_length: 0"));
    assert_eq!(code(&fasncl(&["solve-ncl", arg(&demo("and_pair.json"))])), 1);
}

#[test]
fn reduce_writes_a_bundle_that_solves() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bundle.json");
    let o = fasncl(&["reduce", arg(&demo("triple_pair.json")), "--out", arg(&out)]);
    assert_eq!(code(&o), 0);
    let bundle: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(bundle["fas"]["X"]["order"], 64);
    for key in ["sigma", "sigma_prime", "colors", "edge_map", "vertex_map"] {
        assert!(bundle.get(key).is_some(), "{key}");
    }
    let again = dir.path().join("again.json");
    fasncl(&["reduce", arg(&demo("triple_pair.json")), "--out", arg(&again)]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());

    let o = fasncl(&["solve-fas", arg(&out), "--mode", "quotient", "--bidirectional"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn gadget_exports() {
    let o = fasncl(&["gadget", "blue-edge", "--emit-dot"]);
    assert_eq!(code(&o), 0);
    let dot = stdout(&o);
    assert_eq!(dot.matches("fillcolor").count(), 18);
    let o = fasncl(&["gadget", "red-edge", "--table"]);
    let table: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(table.as_array().unwrap().len(), 4);
    assert_eq!(code(&fasncl(&["gadget", "blue-edge", "--check"])), 0);
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = fasncl(&["verify", arg(&demo("triple_pair.json")), "--exhaustive", "--json-out", arg(&a)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    fasncl(&["--threads", "1", "verify", arg(&demo("triple_pair.json")), "--exhaustive", "--json-out", arg(&b)]);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let o = fasncl(&["verify", arg(&demo("k4_or.json")), "--samples", "10", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = fasncl(&["verify", arg(&demo("triple_pair.json")), "--exhaustive", "--max-states", "3"]);
    assert_eq!(code(&o), 2, "{}", stdout(&o));
}
