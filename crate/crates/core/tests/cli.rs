use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn iwmw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iwmw")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn quadratic() -> String {
    data("example_quadratic.json").display().to_string()
}

#[test]
fn fine_on_quadratic_example() {
    let o = iwmw(&["fine", "--input", &quadratic()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("<1>"), "{out}");
    assert!(out.contains("assumption: fine Sha finite"), "{out}");
}

#[test]
fn pm_rejects_ordinary_instance() {
    let path = data("ordinary_instance.json").display().to_string();
    let o = iwmw(&["pm", "--input", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("pm requires supersingular reduction"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_oracles_passes() {
    let o = iwmw(&["verify-oracles", "--max-order", "100"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 5);
}

#[test]
fn json_output_is_deterministic() {
    for cmd in ["check", "fine", "pm", "equivariant", "greenberg", "kp"] {
        let a = iwmw(&[cmd, "--input", &quadratic(), "--format", "json"]);
        let b = iwmw(&[cmd, "--format", "structured", "--input", &quadratic()]);
        assert_eq!(a.status.code(), Some(0), "{cmd}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{cmd}");
        let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(doc["assumptions"]["fine_sha_finite_at_every_layer"], true, "{cmd}");
    }
    let doc: Value = serde_json::from_slice(&iwmw(&["pm", "--input", &quadratic(), "--format", "json"]).stdout).unwrap();
    assert_eq!(doc["r_plus"], serde_json::json!([1, 0]));
    assert_eq!(doc["r_minus"], serde_json::json!([1, 1]));
    assert_eq!(doc["gcd"]["generator"], "x");
    assert_eq!(doc["gcd_matches_closed_form"], true);
}

#[test]
fn equivariant_signs() {
    let o = iwmw(&["equivariant", "--sign", "minus", "--input", &quadratic(), "--format", "json"]);
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["kind"], "minus");
    assert_eq!(doc["contraction"], serde_json::json!([1, 1]));
    assert_eq!(doc["consistent"], true);
}

#[test]
fn max_level_truncates() {
    let o = iwmw(&["fine", "--input", &quadratic(), "--max-level", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["growth"]["e"], serde_json::json!([1]));
    let o = iwmw(&["fine", "--input", &quadratic(), "--max-level", "5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reps_from_spec_and_repeated_primes() {
    let o = iwmw(&["reps", "2,3^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sum of dimensions: 18"));
    assert_eq!(iwmw(&["reps", "3,3"]).status.code(), Some(2));
    let o = iwmw(&["reps", "3,3", "--allow-repeated-primes"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("W(1,1)  dim 4"));
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(iwmw(&[]).status.code(), Some(2));
    assert_eq!(iwmw(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(iwmw(&["fine"]).status.code(), Some(2));
    assert_eq!(iwmw(&["fine", "--input", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(iwmw(&["fine", "--input", &quadratic(), "--format", "xml"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"p":3,"group":[[2,1],[5,1]],"conductor":11,"ranks":{"0,0":[0],"1,1":[0],"0,1":[0]}}"#).unwrap();
    let o = iwmw(&["fine", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing tuple row"), "{}", stderr(&o));
}

#[test]
fn check_exit_codes() {
    let o = iwmw(&["check", "--input", &quadratic()]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let ramified = dir.path().join("ramified.json");
    std::fs::write(&ramified, r#"{"p":3,"group":[[3,1]],"conductor":9,"ranks":{"0":[0],"1":[0]}}"#).unwrap();
    let o = iwmw(&["check", "--input", ramified.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("K disjoint from the cyclotomic tower: fails"));
    let o = iwmw(&["fine", "--input", ramified.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("fine hypotheses fail"));
}

#[test]
fn selmer_validate() {
    let ok = data("selmer_shape_ordinary.json").display().to_string();
    let o = iwmw(&["selmer-validate", "--input", &ok]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{(1,1), (2,2)}"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("plus.json");
    std::fs::write(&bad, r#"{"reduction":"plus","cyclo_multi":[[3,2]]}"#).unwrap();
    let o = iwmw(&["selmer-validate", "--input", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] parity"));

    let o = iwmw(&["selmer-validate", "--input", &ok, "--instance", &quadratic()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rank_growth"));
}

#[test]
fn fetch_offline() {
    let o = iwmw(&["fetch", "34a1", "--prime", "5", "--offline", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["provenance"], "fixture");
    assert_eq!(doc["classification"]["reduction"], "supersingular");

    let o = iwmw(&["fetch", "15.a1", "--offline"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("offline"));
    let o = iwmw(&["fetch", "zzz999", "--offline"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not found"));
}
