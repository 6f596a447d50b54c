//! End-to-end checks of the `concurtop` binary: exit codes, stable goldens,
//! and the documented summary format.

use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_concurtop");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn golden(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn golden_str(name: &str) -> String {
    std::fs::read_to_string(golden(name)).expect("golden file")
}

#[test]
fn simulate_cycles_golden_is_byte_identical() {
    let args = ["simulate", "--cycles", "3", "--rows", "9", "--seed", "7"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout_of(&first), golden_str("two_cycles_t9_seed7.csv"));
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(stdout_of(&first).lines().count(), 10, "header plus 9 rows");
}

#[test]
fn simulate_rejects_zero_rows() {
    let out = run(&["simulate", "--cycles", "3", "--rows", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("T >= 1"));
}

#[test]
fn simulate_spec_file_with_bad_marginals_names_the_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{
            "groupA": {"names": ["x", "y"],
                       "patterns": [{"bits": "10", "p": 0.5}, {"bits": "01", "p": 0.5}]},
            "groupB": {"names": ["z"], "patterns": [{"bits": "1", "p": 1.0}]},
            "joint": [{"a": "10", "b": "1", "p": 0.9}, {"a": "01", "b": "1", "p": 0.1}]
        }"#,
    )
    .unwrap();
    let out = run(&["simulate", "--input", spec.to_str().unwrap(), "--rows", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_of(&out);
    assert!(err.contains("marginal") && err.contains("10"), "unexpected: {err}");
}

#[test]
fn simulate_spec_file_draws_from_the_joint() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(
        &spec,
        r#"{
            "groupA": {"names": ["x", "y"],
                       "patterns": [{"bits": "10", "p": 0.5}, {"bits": "01", "p": 0.5}]},
            "groupB": {"names": ["z"], "patterns": [{"bits": "1", "p": 1.0}]},
            "joint": [{"a": "10", "b": "1", "p": 0.5}, {"a": "01", "b": "1", "p": 0.5}]
        }"#,
    )
    .unwrap();
    let out = run(&["simulate", "--input", spec.to_str().unwrap(), "--rows", "20", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,z"));
    for line in lines {
        assert!(line == "1,0,1" || line == "0,1,1", "off-spec row {line}");
    }
}

#[test]
fn analyze_golden_report_is_byte_identical_and_finds_the_class() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let input = golden("independent_seed1.csv");
    let out = run(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--group-a",
        "A0,A1,A2",
        "--group-b",
        "B0,B1,B2",
        "--frames",
        "all",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let summary = stdout_of(&out);
    assert!(summary.contains("frame 1 dim 3: rank 1"), "summary:\n{summary}");
    let produced = std::fs::read_to_string(&report).unwrap();
    assert_eq!(produced, golden_str("independent_seed1_report.json"));
}

#[test]
fn analyze_coupled_control_reports_rank_zero() {
    let input = golden("coupled_seed1.csv");
    let out = run(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--group-a",
        "A0,A1,A2",
        "--group-b",
        "B0,B1,B2",
        "--frames",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_of(&out).contains("frame 1 dim 3: rank 0"));
}

#[test]
fn analyze_names_a_missing_group_variable() {
    let input = golden("independent_seed1.csv");
    let out = run(&[
        "analyze",
        "--input",
        input.to_str().unwrap(),
        "--group-a",
        "A0,Q9",
        "--group-b",
        "B0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("Q9"));
}

#[test]
fn homology_reports_hollow_triangle_betti() {
    let dir = tempfile::tempdir().unwrap();
    let complex = dir.path().join("tri.json");
    std::fs::write(
        &complex,
        r#"{"vertices": ["a", "b", "c"], "facets": [["a","b"], ["b","c"], ["a","c"]]}"#,
    )
    .unwrap();
    let out = run(&["homology", "--input", complex.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "betti: 1 1\n");
}

#[test]
fn homology_reports_join_of_two_circles() {
    let dir = tempfile::tempdir().unwrap();
    let complex = dir.path().join("join.json");
    let mut facets = Vec::new();
    for a in [["a", "b"], ["b", "c"], ["a", "c"]] {
        for b in [["d", "e"], ["e", "f"], ["d", "f"]] {
            facets.push(format!(
                r#"["{}","{}","{}","{}"]"#,
                a[0], a[1], b[0], b[1]
            ));
        }
    }
    let json = format!(
        r#"{{"vertices": ["a","b","c","d","e","f"], "facets": [{}]}}"#,
        facets.join(",")
    );
    std::fs::write(&complex, json).unwrap();
    let out = run(&["homology", "--input", complex.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "betti: 1 0 0 1\n");
}

#[test]
fn homology_notes_the_auto_closure() {
    let dir = tempfile::tempdir().unwrap();
    let complex = dir.path().join("open.json");
    std::fs::write(
        &complex,
        r#"{"vertices": ["a", "b", "c"], "facets": [["a","b","c"], ["a","b"]]}"#,
    )
    .unwrap();
    let out = run(&["homology", "--input", complex.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("note:") && text.contains("closure"), "got: {text}");
}

#[test]
fn homology_subcomplex_prints_intervals_and_rank() {
    let dir = tempfile::tempdir().unwrap();
    let full = dir.path().join("full.json");
    let sub = dir.path().join("sub.json");
    std::fs::write(&full, r#"{"vertices": ["a","b","c"], "facets": [["a","b","c"]]}"#).unwrap();
    std::fs::write(
        &sub,
        r#"{"vertices": ["a","b","c"], "facets": [["a","b"], ["b","c"], ["a","c"]]}"#,
    )
    .unwrap();
    let out = run(&[
        "homology",
        "--input",
        full.to_str().unwrap(),
        "--subcomplex",
        sub.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("dim 1: [1, 2)"), "got: {text}");
    assert!(text.contains("inclusion rank: 1"), "got: {text}");
}

#[test]
fn homology_rejects_malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let complex = dir.path().join("bad.json");
    std::fs::write(&complex, r#"{"vertices": ["a"], "facets": [["zzz"]]}"#).unwrap();
    let out = run(&["homology", "--input", complex.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("zzz"));
}

#[test]
fn oracle_passes_and_fails_the_negative_control() {
    let pass = run(&["oracle", "--trials", "25", "--seed", "11"]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(stdout_of(&pass).contains("25 trials passed"));

    let fail = run(&["oracle", "--trials", "5", "--seed", "11", "--inject-failure"]);
    assert_eq!(fail.status.code(), Some(1));
    let text = stdout_of(&fail);
    assert!(text.contains("violations") && text.contains("facets"), "got: {text}");

    let zero = run(&["oracle", "--trials", "0"]);
    assert_eq!(zero.status.code(), Some(2));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = run(&["analyze", "--nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}
