use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn qdr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdr")).args(args).current_dir(models()).output().expect("run qdr")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn error_object(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(line.lines().last().unwrap()).expect("error object")
}

#[test]
fn associativity_suite_passes() {
    let out = qdr(&["check", "--suite", "associativity", "--trials", "200", "--seed", "42"]);
    let r = report(&out);
    assert_eq!(r["result"]["passed"], Value::Bool(true));
    assert_eq!(r["result"]["suites"][0]["trials"], 200);
    assert_eq!(r["header"]["prng"], "ChaCha8Rng/rand_chacha-0.9");
}

#[test]
fn model_checks_run_on_so3() {
    let r = report(&qdr(&["check", "--suite", "model", "--model", "so3.json", "--trials", "5"]));
    assert_eq!(r["result"]["suites"][0]["suite"], "model");
    assert_eq!(r["result"]["passed"], Value::Bool(true));
}

#[test]
fn injected_sign_bug_exits_one_with_witness() {
    let out = qdr(&["check", "--suite", "leibniz_flipped_iota", "--trials", "6", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("FAIL leibniz_flipped_iota") && err.contains("input:"));
}

#[test]
fn malformed_model_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"space\": \"torus\", \"dim\": ").unwrap();
    let out = qdr(&["cohomology", "--model", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_object(&out)["error"]["kind"], "parse");

    let out = qdr(&["cohomology", "--model", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_object(&out)["error"]["kind"], "io");

    let out = qdr(&["check", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn affine_model_rejected_for_cohomology() {
    let out = qdr(&["cohomology", "--model", "so3.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_object(&out)["error"]["kind"], "precondition");
}

#[test]
fn t2_laurent_table_is_deterministic() {
    let a = qdr(&["cohomology", "--model", "t2.json", "--ring", "laurent"]);
    let b = qdr(&["cohomology", "--model", "t2.json", "--ring", "laurent", "--sequential"]);
    assert_eq!(a.stdout, b.stdout);
    let r = report(&a);
    assert_eq!(r["result"]["total_rank"], 4);
    assert_eq!(r["result"]["torsion_free"], Value::Bool(true));
    assert_eq!(r["result"]["nonzero_modes_with_homology"], Value::Array(vec![]));
}

#[test]
fn dolbeault_matches_hodge_numbers() {
    let r = report(&qdr(&["dolbeault", "--model", "t2_complex.json"]));
    assert_eq!(r["result"]["matches_hodge_numbers"], Value::Bool(true));
    let latex = qdr(&["dolbeault", "--model", "t2_complex.json", "--latex"]);
    assert!(String::from_utf8_lossy(&latex.stdout).starts_with("\\begin{tabular}"));
    let out = qdr(&["dolbeault", "--model", "t2.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn trivial_equivariant_matches_polynomial_table() {
    let eq = report(&qdr(&["equivariant", "--model", "t2.json", "--max-degree", "4"]));
    let dr = report(&qdr(&["cohomology", "--model", "t2.json", "--ring", "polynomial", "--max-degree", "4"]));
    assert_eq!(eq["result"]["rows"], dr["result"]["graded"]);
    assert_eq!(eq["result"]["cutoff"], 4);
    let circle =
        report(&qdr(&["equivariant", "--model", "t2.json", "--action", "circle_action.json", "--max-degree", "3"]));
    assert!(circle["result"]["rows"].as_array().unwrap().iter().all(|r| r["rank"] == 1));
}

#[test]
fn lefschetz_report_n2() {
    let r = report(&qdr(&["lefschetz", "--model", "t4.json"]));
    let res = &r["result"];
    assert_eq!(res["commutators_pass"], Value::Bool(true));
    assert_eq!(res["hard_lefschetz_holds"], Value::Bool(true));
    let spectra = res["spectra"].as_array().unwrap();
    assert_eq!(spectra.len(), 5);
    assert!(spectra.iter().all(|s| s["m_h"]["factors"].as_array().is_some_and(|f| !f.is_empty())));
}

#[test]
fn chern_reports() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.json");
    std::fs::write(&zero, r#"{"rank": 2, "theta": [[[], []], [[], []]]}"#).unwrap();
    let r = report(&qdr(&["chern", "--model", "t2.json", "--connection", zero.to_str().unwrap()]));
    assert!(r["result"]["trace_powers"].as_array().unwrap().iter().all(|t| t["form"] == Value::Array(vec![])));
    let r = report(&qdr(&["chern", "--model", "t2.json", "--connection", "rank2_connection.json"]));
    assert!(r["result"]["trace_powers"].as_array().unwrap().iter().all(|t| t["closed"] == Value::Bool(true)));
}

#[test]
fn integral_with_stokes_certificate_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("integral.json");
    let out =
        qdr(&["integral", "--model", "t2.json", "--form", "sample_form.json", "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(r["result"]["stokes"]["passed"], Value::Bool(true));
    // ∫ (3 e^{12} + h/2) = 3 + (1/2) h · ∫ ω = 3 + h/2
    assert_eq!(r["result"]["integral"], json!([[0, {"re": "3/1", "im": "0/1"}], [1, {"re": "1/2", "im": "0/1"}]]));
}
