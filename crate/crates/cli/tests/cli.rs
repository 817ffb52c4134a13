use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abext"))
        .args(args)
        .env_remove("ABEXT_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn ok_json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{:?}: {}", args, stdout(&o));
    serde_json::from_str(&stdout(&o)).expect("one JSON document")
}

#[test]
fn ext_of_cyclic_groups() {
    let o = run(&["ext", "--A", "Z(4)", "--B", "Z(6)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"group":{"rank":0,"factors":["2"]}}"#);
}

#[test]
fn unbounded_torsion_is_not_universal() {
    let v = ok_json(&["classify-torsion", "U(2)"]);
    assert_eq!(v["universal_TZ"], json!(false));
    assert_eq!(v["witness_prime"], json!("2"));
}

#[test]
fn witness_order() {
    let v = ok_json(&["witness", "--p", "2", "--N", "4"]);
    assert_eq!(v["order"], json!("16"));
}

#[test]
fn domain_errors_exit_one_with_error_object() {
    for args in [
        &["ext", "--A", "Z(", "--B", "Z"][..],
        &["classify-torsion", "Z+Z(2)"],
        &["classify", "--seq", "{\"f\": 3}"],
        &["snf", "--matrix", "[[1, 2], [3]]"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(1), "{:?}", args);
        let v: Value = serde_json::from_str(&stdout(&o)).expect("error object");
        assert!(v["code"].is_string() && v["message"].is_string(), "{:?}: {}", args, v);
    }
    let v: Value = serde_json::from_str(&stdout(&run(&["parse", "Z(2)+Q"]))).unwrap();
    assert_eq!(v["code"], json!("parse_error"));
    assert!(v["position"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["ext", "--A", "Z(2)"]).status.code(), Some(2));
    assert_eq!(run(&["witness", "--p", "two", "--N", "3"]).status.code(), Some(2));
}

#[test]
fn budget_is_enforced() {
    let o = run(&["--budget", "10", "witness", "--p", "2", "--N", "4", "--method", "brute"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["code"], json!("budget_exceeded"));
}

#[test]
fn realize_classify_roundtrip() {
    let class = r#"{"A": "Z(4)+Z", "B": "Z(8)", "coords": ["2"]}"#;
    let seq = ok_json(&["realize", "--class", class]);
    let back = ok_json(&["classify", "--seq", &seq.to_string()]);
    assert_eq!(back["coords"], json!(["2"]));
    assert_eq!(back["A"], json!({"rank": 1, "factors": ["4"]}));
    // the printed class reads back unchanged
    let again = ok_json(&["realize", "--class", &back.to_string()]);
    assert_eq!(again, seq);
}

#[test]
fn baer_sum_paths_agree() {
    let x = r#"{"A": "Z(4)", "B": "Z(6)", "coords": ["1"]}"#;
    let algebraic = ok_json(&["baer", "--x", x, "--y", x]);
    let geometric = ok_json(&["baer", "--x", x, "--y", x, "--geometric"]);
    assert_eq!(algebraic, geometric);
    assert_eq!(algebraic["coords"], json!(["0"]));
}

#[test]
fn universal_extension_certificate() {
    let v = ok_json(&["univ-ext", "--B", "Z(2)", "--A", "Z(4)", "--full"]);
    assert_eq!(v["universal"], json!(true));
    assert_eq!(v["X_size"], json!("2"));
    assert_eq!(v["X"].as_array().unwrap().len(), 2);
    let split = ok_json(&["univ-coext", "--B", "Z(3)", "--A", "Z(4)"]);
    assert_eq!(split["degenerate"], json!(true));
}

#[test]
fn output_is_deterministic() {
    let args = ["--seed", "7", "cyclic-check", "--B", "Z(2)", "--A", "Z(4)"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
    let pretty = stdout(&run(&["--pretty", "hom", "--A", "Z(6)", "--B", "Z(4)"]));
    let plain = stdout(&run(&["hom", "--A", "Z(6)", "--B", "Z(4)"]));
    assert!(pretty.lines().count() > 1);
    assert_eq!(serde_json::from_str::<Value>(&pretty).unwrap(), serde_json::from_str::<Value>(&plain).unwrap());
}

#[test]
fn json_arguments_from_files() {
    let dir = std::env::temp_dir().join(format!("abext-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.json");
    std::fs::write(&path, "[[2, 4], [6, 8]]").unwrap();
    let v = ok_json(&["snf", "--matrix", &format!("@{}", path.display())]);
    assert_eq!(v["diagonal"], json!(["2", "4"]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn psi_and_delta() {
    let v = ok_json(&["psi", "--A", "Z(2)", "--A", "Z(4)", "--B", "Z(8)"]);
    assert_eq!(v["bijective"], json!(true));
    let v = ok_json(&["psi", "--A", "Z(2)", "--A", "Z(3)", "--B", "Z(6)", "--dual"]);
    assert_eq!(v["bijective"], json!(true));
    let seq = ok_json(&["realize", "--class", r#"{"A": "Z(2)", "B": "Z(2)", "coords": ["1"]}"#]);
    let d = ok_json(&["delta", "--seq", &seq.to_string(), "--T", "Z(2)"]);
    assert_eq!(d["surjective"], json!(true));
}

#[test]
fn torsion_verbs() {
    let v = ok_json(&["cotorsion", "Z(2^inf)+Z(4)"]);
    assert_eq!(v["cotorsion"], json!(true));
    assert_eq!(v["bound"], json!("4"));
    let v = ok_json(&["parse", "Z(4)^2+Z(2)"]);
    assert_eq!(v["group"], json!({"rank": 0, "factors": ["2", "4", "4"]}));
    let v = ok_json(&["ab4-witness", "--p", "3", "--N", "2"]);
    assert!(v["order"].is_string());
}
