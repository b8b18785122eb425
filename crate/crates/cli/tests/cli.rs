use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realforms"))
        .args(args)
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_slice(&run(args).stdout).unwrap()
}

fn strip_times(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_times);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_times),
        _ => {}
    }
}

#[test]
fn verify_all_symbolic() {
    let out = run(&["verify", "all", "--alpha", "symbolic", "--beta", "symbolic"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["total"], 13);
    assert_eq!(v["summary"]["passed"], 13);
    assert_eq!(v["exit_code"], 0);
    let ids: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["check_id"].as_str().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
}

#[test]
fn verify_single_check() {
    let v = json(&["verify", "lem-6.1", "--alpha", "2"]);
    assert_eq!(v["checks"][0]["status"], "pass");
    assert_eq!(v["checks"][0]["witness"].as_array().unwrap().len(), 11);
    assert_eq!(code(&["verify", "lem-6.1", "--alpha", "2"]), 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["verify", "bogus-id"]), 2);
    assert_eq!(code(&["verify", "--alpha", "0.5"]), 2);
    assert_eq!(code(&["verify", "--alpha", "1"]), 2);
    assert_eq!(code(&["classify", "1", "2"]), 2);
    assert_eq!(code(&["classify", "2", "0"]), 2);
    assert_eq!(code(&["classify", "symbolic", "2"]), 2);
    assert_eq!(code(&["grid", "--values", "0,2"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
}

#[test]
fn classify_outputs() {
    let v = json(&["classify", "2", "1/2"]);
    assert_eq!(v["verdict"], "Isomorphic");
    assert_eq!(
        v["witness"],
        serde_json::json!([["1/2", "0"], ["0", "1/2"]])
    );
    let v = json(&["classify", "2", "3"]);
    assert_eq!(v["verdict"], "NotIsomorphic");
    assert_eq!(v["witness"], Value::Null);
    assert_eq!(code(&["classify", "2", "3"]), 0);
    assert_eq!(code(&["classify", "-1/3", "-3", "--format", "text"]), 0);
}

#[test]
fn grid_runs() {
    let v = json(&["grid", "--values", "2,1/2"]);
    assert_eq!(v["summary"]["passed"], 4);
    assert_eq!(v["matrix"], serde_json::json!(["II", "II"]));
    let v = json(&["grid", "--jobs", "2"]);
    assert_eq!(v["summary"]["total"], 100);
    assert_eq!(v["summary"]["passed"], 100);
    assert_eq!(v["exit_code"], 0);
}

#[test]
fn reports_are_deterministic() {
    let mut a = json(&[
        "verify",
        "rem-3.2",
        "lem-6.2",
        "prop-6.3",
        "def-3.4-rees",
        "--jobs",
        "1",
    ]);
    let mut b = json(&[
        "verify",
        "def-3.4-rees",
        "prop-6.3",
        "lem-6.2",
        "rem-3.2",
        "--jobs",
        "3",
    ]);
    strip_times(&mut a);
    strip_times(&mut b);
    assert_eq!(a, b);
    let mut c = json(&["grid", "--values", "2,-1/2,3", "--jobs", "3"]);
    let mut d = json(&["grid", "--values", "2,-1/2,3"]);
    strip_times(&mut c);
    strip_times(&mut d);
    assert_eq!(
        serde_json::to_string(&c).unwrap(),
        serde_json::to_string(&d).unwrap()
    );
}

#[test]
fn enumerate_lists_records() {
    let v = json(&["enumerate", "--alpha", "symbolic", "--d-max", "3"]);
    assert_eq!(v["records"].as_array().unwrap().len(), 11);
    assert_eq!(code(&["enumerate", "--alpha", "-1", "--format", "text"]), 0);
}
