//! End-to-end checks of the command-line interface: verbs, exit codes, and
//! output determinism.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn classify_verb() {
    let (code, stdout, _) = run(&["classify", "[x^3 : y^2*z : x*y*z]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["type_id"], 10);
    assert_eq!(v["oq"], 3);
    assert_eq!(v["inverse_type"], 10);
}

#[test]
fn classify_with_parameter() {
    let (code, stdout, _) = run(&[
        "classify",
        "[g*x^2*y : g*x*y^2 : (x+y)*(x+g*y)*z]",
        "--param",
        "g=5",
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["type_id"], 27);
    let orbit = v["orbit"].as_array().unwrap();
    assert_eq!(orbit.len(), 2);
}

#[test]
fn compose_verb() {
    let (code, stdout, _) = run(&["compose", "[y*z : x*z : x*y]", "[y*z : x*z : x*y]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["degree"], 1);
    assert_eq!(v["map"], "[x : y : z]");
}

#[test]
fn base_points_verb() {
    let (code, stdout, _) = run(&["base-points", "[x*z^2 + y^3 : y*z^2 : z^3]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 5);
    assert_eq!(v["mult_sum"], 6);
    assert_eq!(v["mult_square_sum"], 8);
}

#[test]
fn enumerate_verbs() {
    let (code, stdout, _) = run(&["enumerate"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["count"], 21);
    let (code, stdout, _) = run(&["enumerate", "--enriched"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["count"], 31);
    // every row number 1..=31 appears exactly once
    let mut rows: Vec<u64> = v["graphs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["catalog_row"].as_u64().unwrap())
        .collect();
    rows.sort_unstable();
    assert_eq!(rows, (1..=31).collect::<Vec<u64>>());
}

#[test]
fn equivalent_verb_and_exit_codes() {
    let m27_5 = "[5*x^2*y : 5*x*y^2 : (x+y)*(x+5*y)*z]";
    let m27_inv5 = "[1/5*x^2*y : 1/5*x*y^2 : (x+y)*(x+1/5*y)*z]";
    let (code, stdout, _) = run(&["equivalent", m27_5, m27_inv5]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["equivalent"], true);
    // non-equivalent maps exit 1
    let m27_7 = "[7*x^2*y : 7*x*y^2 : (x+y)*(x+7*y)*z]";
    let (code, stdout, _) = run(&["equivalent", m27_5, m27_7]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    // malformed input exits 2
    let (code, _, stderr) = run(&["classify", "[x : y : w]"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error"));
}

#[test]
fn orbit_verb() {
    let (code, stdout, _) = run(&["orbit", "28", "g=3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["orbit"].as_array().unwrap().len(), 6);
    assert_eq!(v["canonical"]["g"], "-2");
    let (code, stdout, _) = run(&["orbit", "31", "a=2", "b=3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["orbit"].as_array().unwrap().len(), 24);
}

#[test]
fn lengths_verb() {
    let (code, stdout, _) = run(&["lengths", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["q"], 3);
    assert_eq!(v["oq"], 6);
    assert_eq!(v["lower_bound"], 5);
    let (code, stdout, _) = run(&["lengths", "[y*z : x*z : x*y]"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["heights"]["max_height"], 1);
}

#[test]
fn graph_verb_with_dot() {
    let (code, stdout, _) = run(&["graph", "[x*z^2 + y^3 : y*z^2 : z^3]", "--enriched", "--dot"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("digraph"));
    assert!(stdout.contains("v1 -> v0"));
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "[x*y*z : (y - x)*y*z : x*(x - y)*(y - z)]"];
    let (_, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    assert!(!first.is_empty());
}
