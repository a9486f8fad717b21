//! End-to-end checks of the command-line interface: exit codes, JSON
//! schema fields, and agreement between text and JSON modes.

use std::path::Path;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plcrn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is valid JSON")
}

#[test]
fn analyze_reports_structure_and_exits_zero() {
    let out = run(&["analyze", &fixture("toy.crn"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["network"]["m"], 2);
    assert_eq!(json["network"]["n"], 6);
    assert_eq!(json["network"]["r"], 4);
    assert_eq!(json["network"]["ell"], 2);
    assert_eq!(json["network"]["rank_N"], 2);
    assert_eq!(json["network"]["deficiency"], 2);
    assert_eq!(json["plrdk"], true);
}

#[test]
fn analyze_carbon_cycle_deficiency() {
    let out = run(&["analyze", &fixture("carbon_cycle.crn"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["network"]["deficiency"], 1);
    assert_eq!(json["network"]["ell"], 3);
}

#[test]
fn check_carbon_cycle_passes_conditions() {
    let out = run(&["check", &fixture("carbon_cycle.crn"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["t_hat"]["rank"], 4);
    assert_eq!(json["t_hat"]["sub_ranks"], serde_json::json!([2, 2]));
    assert_eq!(json["t_hat"]["independent"], true);
    assert_eq!(json["verdict"], "nonempty");
    let states = json["steady_states"].as_array().unwrap();
    assert_eq!(states.len(), 3);
    assert!(states.iter().all(|s| s["status"] != "not_found"));
}

#[test]
fn check_toy_exits_three() {
    let out = run(&["check", &fixture("toy.crn"), "--json"]);
    assert_eq!(out.status.code(), Some(3));
    let json = stdout_json(&out);
    assert_eq!(json["t_hat"]["rank"], 3);
    assert_eq!(json["t_hat"]["independent"], false);
    assert_eq!(json["verdict"], "conditions_not_met");
    assert_eq!(
        json["decomposition"]["blocks"],
        serde_json::json!([["R1", "R2"], ["R3", "R4"]])
    );
}

#[test]
fn check_single_pair_is_trivially_independent() {
    let out = run(&["check", &fixture("xy.crn"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["decomposition"]["num_blocks"], 1);
    assert_eq!(json["verdict"], "nonempty");
}

#[test]
fn rates_override_changes_the_verdict() {
    // Generic rates break the toy system's compatibility condition, so even
    // the informational direct search comes up empty.
    let out = run(&[
        "check",
        &fixture("toy.crn"),
        "--json",
        "--rates",
        "1,3,1,2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let json = stdout_json(&out);
    let whole = json["steady_states"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["scope"] == "whole")
        .unwrap()
        .clone();
    assert_eq!(whole["status"], "conditions_not_met");
    assert!(whole.get("x").is_none());
}

#[test]
fn solve_exits_zero_even_without_witness() {
    let out = run(&["solve", &fixture("toy.crn"), "--rates", "1,3,1,2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn text_and_json_report_identical_values() {
    let json_out = run(&["check", &fixture("carbon_cycle.crn"), "--json"]);
    let text_out = run(&["check", &fixture("carbon_cycle.crn")]);
    let json = stdout_json(&json_out);
    let text = String::from_utf8(text_out.stdout).unwrap();
    assert!(text.contains(&format!(
        "rank N = {}, deficiency = {}",
        json["network"]["rank_N"], json["network"]["deficiency"]
    )));
    assert!(text.contains("augmented rank 4 vs block ranks [2, 2]: independent = true"));
}

#[test]
fn malformed_file_exits_one_with_line_number() {
    let dir = std::env::temp_dir().join("plcrn_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.crn");
    std::fs::write(&path, "species X Y\nreaction R1: X -> ; k = 1\n").unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("line 2"), "stderr: {stderr}");
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["analyze", "/nonexistent/path.crn"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_rates_override_exits_one() {
    let out = run(&["check", &fixture("toy.crn"), "--rates", "1,2,3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["check", &fixture("toy.crn"), "--rates", "1,2,3,-4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chain_closed_form_and_residual() {
    let out = run(&[
        "chain", "--n", "1", "--f", "1,1", "--k", "2", "--kp", "6", "--tau", "1", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let x = json["x"].as_array().unwrap();
    assert!((x[0].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!((x[1].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(json["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn chain_mass_action_two_pairs() {
    let out = run(&[
        "chain", "--n", "2", "--f", "1,1,1", "--k", "1,1", "--kp", "2,3", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    let x: Vec<f64> = json["x"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(x, vec![6.0, 3.0, 1.0]);
    assert_eq!(json["t_hat"]["rank"], 4);
}

#[test]
fn chain_rejects_zero_order() {
    let out = run(&["chain", "--n", "1", "--f", "0,1", "--k", "2", "--kp", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn deterministic_output_for_fixed_seed() {
    let args = ["check", &fixture("toy.crn"), "--json", "--seed", "9"];
    let first = run(&args.iter().map(|s| &**s).collect::<Vec<_>>());
    let second = run(&args.iter().map(|s| &**s).collect::<Vec<_>>());
    assert_eq!(first.stdout, second.stdout);
}
