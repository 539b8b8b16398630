use std::path::Path;
use std::process::{Command, Output};

fn mccac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mccac")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bound_prints_value_first() {
    let out = mccac(&["bound", "--weight", "3", "--channels", "3", "--length", "13"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().next(), Some("22"));
}

#[test]
fn bound_flags_example_evaluated_value() {
    let out = mccac(&["bound", "--weight", "3", "--channels", "4", "--length", "10"]);
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("30"));
    assert!(text.contains("example-evaluated: 28"));
}

#[test]
fn bound_below_threshold_is_usage_error() {
    let out = mccac(&["bound", "--weight", "3", "--channels", "2", "--length", "13"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("family.json");
    let out = mccac(&["construct", "--channels", "4", "--length", "22", "--weight", "3", "--out", path(&file)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("codewords: 64"));
    let out = mccac(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("valid: true"));
}

#[test]
fn construct_unavailable_fails() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("x.json");
    let out = mccac(&["construct", "--channels", "4", "--length", "13", "--weight", "3", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!file.exists());
}

#[test]
fn verify_lists_conflicts() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("dup.json");
    std::fs::write(
        &file,
        r#"{"schema_version": 1, "M": 3, "L": 5, "w": 3,
            "patterns": [[[0,0],[1,1],[2,2]], [[0,1],[1,2],[2,3]]]}"#,
    )
    .unwrap();
    let out = mccac(&["verify", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("valid: false"));
    assert!(text.contains("conflict: patterns 0 and 1"), "{text}");
}

#[test]
fn verify_restricted_rejects_simultaneous_packets() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ex1.json");
    assert!(mccac(&["catalog", "example1", "--out", path(&file)]).status.success());
    assert_eq!(mccac(&["verify", path(&file)]).status.code(), Some(0));
    let out = mccac(&["verify", path(&file), "--restricted"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("pattern 3 sends two packets"));
}

#[test]
fn unsupported_schema_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("future.json");
    std::fs::write(&file, r#"{"schema_version": 99, "M": 1, "L": 5, "w": 1, "patterns": []}"#).unwrap();
    assert_eq!(mccac(&["verify", path(&file)]).status.code(), Some(2));
}

#[test]
fn missing_file_is_usage_error() {
    assert_eq!(mccac(&["verify", "/nonexistent/code.json"]).status.code(), Some(2));
}

#[test]
fn search_certifies_small_instance() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("best.json");
    let out = mccac(&["search", "--channels", "3", "--length", "5", "--weight", "3", "--exact", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("size: 8") && text.contains("status: optimal"), "{text}");
    assert_eq!(mccac(&["verify", path(&file)]).status.code(), Some(0));
}

#[test]
fn exact_search_out_of_budget_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("partial.json");
    let out = mccac(&[
        "search", "--channels", "4", "--length", "6", "--weight", "3", "--exact", "--node-budget", "50", "--out",
        path(&file),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("lower-bound-only"));
    // The incumbent is still written and valid.
    assert_eq!(mccac(&["verify", path(&file)]).status.code(), Some(0));
}

#[test]
fn search_too_large_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("big.json");
    let out = mccac(&["search", "--channels", "4", "--length", "22", "--weight", "3", "--out", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_constructed_code() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    assert!(mccac(&["construct", "--channels", "3", "--length", "13", "--weight", "3", "--out", path(&file)])
        .status
        .success());
    let args = ["simulate", path(&file), "--active", "3", "--trials", "200", "--seed", "7"];
    let out = mccac(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("pass: 200") && text.contains("fail: 0"), "{text}");
    // Same seed, more workers: identical report.
    let mut parallel = vec!["--jobs", "2"];
    parallel.extend_from_slice(&args);
    assert_eq!(stdout(&mccac(&parallel)), text);
}

#[test]
fn simulate_beyond_weight_is_not_claimed() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("ex1.json");
    assert!(mccac(&["catalog", "example1", "--out", path(&file)]).status.success());
    let out = mccac(&["simulate", path(&file), "--active", "4", "--trials", "10", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("guarantee-not-claimed"));
}

#[test]
fn catalog_unknown_name() {
    let dir = tempfile::tempdir().unwrap();
    let out = mccac(&["catalog", "example9", "--out", path(&dir.path().join("x.json"))]);
    assert_eq!(out.status.code(), Some(2));
}
