use std::process::Command;

use fourfold_cli::{render_json, run, EXIT_FAILED, EXIT_MALFORMED, EXIT_OUT_OF_SCOPE, EXIT_PASS};
use serde_json::Value;

fn cli(args: &[&str]) -> fourfold_cli::Outcome {
    run(std::iter::once("fourfold").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value, String) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    let v: Value = serde_json::from_str(&out.stdout).expect("valid json");
    (out.code, v, out.stdout)
}

const OCTIC_SCALED: &str = "256,0,0,0,0,0,0,0,1";

#[test]
fn amitsur_check_branch_2a() {
    let out = cli(&["amitsur", "check", "--m", "20", "--r", "9"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.starts_with("PASS"));
    assert!(out.stdout.contains("COND2A"));
    let (code, v, _) = json(&["amitsur", "check", "--m", "20", "--r", "9"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["branch"], "COND2A");
    assert_eq!(v["group"], "C5⋊C8");
    assert_eq!(v["embeddable"], true);
}

#[test]
fn amitsur_check_negative_and_malformed() {
    let out = cli(&["amitsur", "check", "--m", "8", "--r", "3"]);
    assert_eq!(out.code, EXIT_FAILED);
    assert!(out.stdout.starts_with("FAILED"));
    assert_eq!(cli(&["amitsur", "check", "--m", "20", "--r", "5"]).code, EXIT_MALFORMED);
    assert_eq!(cli(&["amitsur", "check", "--m", "12", "--r", "-1"]).code, EXIT_PASS);
}

#[test]
fn weil_check_rejects_real_root_outside_bound() {
    let out = cli(&["weil", "check", "--q", "625", "--poly", "625,-51,1"]);
    assert_eq!(out.code, EXIT_FAILED);
    let (code, v, _) = json(&["weil", "check", "--q", "625", "--poly", "625,-51,1"]);
    assert_eq!(code, EXIT_FAILED);
    assert_eq!(v["is_weil"], false);
    assert_eq!(v["verdict"], "FAILED");
    assert_eq!(cli(&["weil", "check", "--q", "625", "--poly", "625,-25,1"]).code, EXIT_PASS);
}

#[test]
fn malformed_inputs_exit_2() {
    for args in [
        &["weil", "check", "--q", "6", "--poly", "1,2,1"][..],
        &["weil", "check", "--q", "4", "--poly", "1,x"],
        &["field", "split", "--model", "15:1,4", "--p", "9"],
        &["field", "split", "--model", "nonsense", "--p", "2"],
        &["catalog", "lemma", "--tag", "L9.9"],
        &["catalog", "verify", "--id", "14"],
        &["weil", "frobnicate"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, EXIT_MALFORMED, "{args:?}: {out:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let (code, v, _) = json(&["weil", "check", "--q", "6", "--poly", "1,2,1"]);
    assert_eq!(code, EXIT_MALFORMED);
    assert_eq!(v["error"], "malformed");
}

#[test]
fn out_of_scope_inputs_exit_3() {
    let out = cli(&["endalg", "shape", "--q", "4", "--poly", OCTIC_SCALED]);
    assert_eq!(out.code, EXIT_OUT_OF_SCOPE);
    assert_eq!(cli(&["group", "jordan", "--m", "130", "--r", "-1"]).code, EXIT_OUT_OF_SCOPE);
    let (code, v, _) = json(&["group", "jordan", "--m", "130", "--r", "-1"]);
    assert_eq!(code, EXIT_OUT_OF_SCOPE);
    assert_eq!(v["error"], "out_of_scope");
}

#[test]
fn model_rescues_irregular_shape() {
    let (code, v, _) =
        json(&["endalg", "shape", "--q", "4", "--poly", OCTIC_SCALED, "--model", "16:1"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["e"], 8);
    assert_eq!(v["d"], 1);
}

#[test]
fn endalg_shape_of_a_non_weil_polynomial_fails() {
    assert_eq!(cli(&["endalg", "shape", "--q", "625", "--poly", "625,-51,1"]).code, EXIT_FAILED);
}

#[test]
fn catalog_verify_all_passes() {
    let (code, v, _) = json(&["catalog", "verify", "--all"]);
    assert_eq!(code, EXIT_PASS);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 13);
    assert!(reports.iter().all(|r| r["pass"] == true));
    assert_eq!(v["verdict"], "PASS");
    let one = cli(&["catalog", "verify", "--id", "1"]);
    assert_eq!(one.code, EXIT_PASS);
    assert!(one.stdout.contains("witness 1"));
}

#[test]
fn json_round_trips_byte_identically() {
    for args in [
        &["catalog", "verify", "--all"][..],
        &["amitsur", "check", "--m", "20", "--r", "9"],
        &["amitsur", "enumerate", "--n", "2", "--cond", "c2"],
        &["weil", "check", "--q", "625", "--poly", "625,-51,1"],
        &["group", "jordan", "--m", "20", "--r", "9"],
        &["field", "split", "--model", "15:1,4", "--p", "2"],
        &["catalog", "jordan-range"],
        &["catalog", "lemma", "--tag", "L3.5"],
        &["endalg", "shape", "--q", "4", "--poly", OCTIC_SCALED],
    ] {
        let (_, v, raw) = json(args);
        assert_eq!(render_json(&v), raw, "{args:?}");
    }
}

#[test]
fn enumerate_and_lemma_outputs() {
    let (_, v, _) = json(&["amitsur", "enumerate", "--n", "2", "--cond", "c2"]);
    let names: Vec<&str> =
        v["groups"].as_array().unwrap().iter().map(|g| g["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["Q8", "Dic16", "Dic24", "Dic32", "Dic40", "Dic48"]);
    let (_, v, _) = json(&["catalog", "lemma", "--tag", "L3.5"]);
    assert_eq!(v["groups"].as_array().unwrap().len(), 6);
    let (_, v, _) = json(&["catalog", "jordan-range"]);
    assert_eq!(v["range"], serde_json::json!([1, 2, 4]));
}

#[test]
fn group_jordan_reports_index() {
    let (code, v, _) = json(&["group", "jordan", "--m", "20", "--r", "9"]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(v["group"], "C5⋊C8");
    assert_eq!(v["jordan_constant"], 2);
    assert_eq!(v["z_group"], true);
}

#[test]
fn binary_exit_codes_match_library() {
    let bin = env!("CARGO_BIN_EXE_fourfold");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code().unwrap();
    assert_eq!(status(&["amitsur", "check", "--m", "20", "--r", "9"]), 0);
    assert_eq!(status(&["weil", "check", "--q", "625", "--poly", "625,-51,1"]), 1);
    assert_eq!(status(&["weil", "check", "--q", "6", "--poly", "1,1"]), 2);
    assert_eq!(status(&["group", "jordan", "--m", "130", "--r", "-1"]), 3);
    let out = Command::new(bin).args(["--json", "catalog", "jordan-range"]).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(render_json(&v).as_bytes(), &out.stdout[..]);
}
