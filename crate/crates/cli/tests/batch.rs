mod common;

use std::process::Command;

use angrank::*;
use serde_json::Value;

fn batch(contents: &str, extra: &[&str]) -> (Option<i32>, String, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("labels.txt");
    std::fs::write(&file, contents).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_angrank"))
        .arg("batch")
        .arg(&file)
        .arg("--json-out")
        .arg(dir.path().join("out"))
        .args(extra)
        .output()
        .unwrap();
    (out.status.code(), String::from_utf8(out.stdout).unwrap(), dir)
}

fn summary(dir: &tempfile::TempDir) -> Vec<Value> {
    let text = std::fs::read_to_string(dir.path().join("out/summary.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    v["entries"].as_array().unwrap().clone()
}

#[test]
fn two_fixture_labels() {
    let (code, table, dir) = batch("# two classes\n3.2.a_ab_ac\n\n3.2.a_a_ac  # low rank\n", &["--jobs", "2"]);
    assert_eq!(code, Some(EXIT_OK));
    let rows = summary(&dir);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["label"], "3.2.a_ab_ac");
    assert_eq!(rows[0]["delta"], 2);
    assert_eq!(rows[1]["delta"], 1);
    assert_eq!(rows[0]["newton"], "almost_ordinary");
    assert_eq!(rows[0]["m"], 1);
    assert!(table.lines().count() == 3 && table.contains("3.2.a_a_ac"));
    let schema = common::schema();
    for l in ["3.2.a_ab_ac", "3.2.a_a_ac"] {
        let rep: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(format!("out/{l}.json"))).unwrap()).unwrap();
        assert!(common::schema_errors(&schema, &rep).is_empty());
    }
}

#[test]
fn bad_label_and_error_policy() {
    let (code, table, dir) = batch("1.2.ab\nnot-a-label\n", &[]);
    assert_eq!(code, Some(EXIT_OK));
    let rows = summary(&dir);
    assert_eq!(rows.len(), 2);
    assert!(rows[1]["error"].as_str().unwrap().starts_with("weil_poly:"));
    assert!(dir.path().join("out/1.2.ab.json").exists());
    assert_eq!(std::fs::read_dir(dir.path().join("out")).unwrap().count(), 2);
    assert!(table.contains("not-a-label"));
    let (code, _, _) = batch("1.2.ab\nnot-a-label\n", &["--on-error", "fail"]);
    assert_eq!(code, Some(EXIT_INPUT));
}

#[test]
fn empty_and_missing_files() {
    let (code, table, dir) = batch("# nothing\n\n", &[]);
    assert_eq!(code, Some(EXIT_OK));
    assert_eq!(table.lines().count(), 1);
    assert!(summary(&dir).is_empty());
    let out = Command::new(env!("CARGO_BIN_EXE_angrank")).args(["batch", "/nonexistent/labels"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_INPUT));
}

#[test]
fn audit_failure_dominates_exit_code() {
    let mut out = run_batch(&["1.2.ab".to_string()], &RunOptions::default(), Some(1)).unwrap();
    assert_eq!(out.exit_code(ErrorPolicy::Fail), EXIT_OK);
    out.entries.push(("x".into(), Err(CliError::new("weil_poly", "bad"))));
    assert_eq!(out.exit_code(ErrorPolicy::Continue), EXIT_OK);
    assert_eq!(out.exit_code(ErrorPolicy::Fail), EXIT_INPUT);
    if let Ok(o) = &mut out.entries[0].1 {
        o.audit_failed = true;
    }
    assert_eq!(out.exit_code(ErrorPolicy::Continue), EXIT_AUDIT);
    assert_eq!(out.exit_code(ErrorPolicy::Fail), EXIT_AUDIT);
}
