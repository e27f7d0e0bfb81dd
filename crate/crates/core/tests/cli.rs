use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monoretract")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

/// Every boolean under an `oracle` key, and the census failure counts.
fn oracle_clean(v: &Value) -> bool {
    match v {
        Value::Object(map) => map.iter().all(|(k, x)| match (k.as_str(), x) {
            ("oracle", Value::Object(o)) => o.values().all(|b| b.as_bool() != Some(false)),
            ("failures", Value::Number(n)) => n.as_u64() == Some(0),
            _ => oracle_clean(x),
        }),
        Value::Array(xs) => xs.iter().all(oracle_clean),
        _ => true,
    }
}

fn invocations() -> Vec<Vec<String>> {
    let f = fixture;
    let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    vec![
        v(&["verify-retract", &f("three_points.json")]),
        v(&["find-base", &f("three_points.json")]),
        v(&["find-base", &f("fifth_powers_f5.json")]),
        v(&["find-base", &f("pentagon_projection.json")]),
        v(&["verify-base", &f("three_points.json"), "--base", "x,y"]),
        v(&["brute-base", &f("pentagon_face.json")]),
        v(&["--field", "F2", "enumerate", &f("path_ideal.json")]),
        v(&["decompose", "--mode", "irreducible", &f("split_ideal.json")]),
        v(&["decompose", "--mode", "squarefree", &f("path_ideal.json")]),
        v(&["sr", &f("pentagon.json")]),
        v(&["restrict", "--vars", "x,z,t", &f("pentagon.json")]),
        v(&["toric-present", &f("plane_wall_fan.json")]),
        v(&["restricted-subfans", &f("plane_wall_fan.json")]),
        v(&["classify", &f("plane_wall_fan.json")]),
        v(&["classify", &f("pentagon_projection.json")]),
        v(&["--field", "F3", "census", &f("path_ideal.json"), &f("pure_powers.json")]),
    ]
}

#[test]
fn output_is_deterministic_json() {
    for args in invocations() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let v: Value = serde_json::from_slice(&a.stdout).unwrap();
        let again = serde_json::to_string(&v).unwrap();
        assert_eq!(again.trim(), String::from_utf8_lossy(&a.stdout).trim(), "{args:?}");
    }
}

#[test]
fn oracles_agree_on_fixtures() {
    for args in invocations() {
        let mut with: Vec<&str> = vec!["--oracle"];
        with.extend(args.iter().map(String::as_str));
        let v = json(&with);
        assert!(oracle_clean(&v), "{with:?}: {v}");
    }
}

#[test]
fn three_points_base() {
    let v = json(&["find-base", &fixture("three_points.json")]);
    assert_eq!(strings(&v["base"]), vec!["x", "y"]);
    assert_eq!(v["method"], "squarefree");
    let v = json(&["classify", &fixture("three_points.json")]);
    assert_eq!(v["classification"]["summary"], "k[x,y]/(x*y)");
}

#[test]
fn plane_wall_presentation() {
    let v = json(&["--degree", "2", "toric-present", &fixture("plane_wall_fan.json")]);
    assert_eq!(strings(&v["ideal"]["monomials"]), vec!["x*z", "z*t"]);
    assert_eq!(strings(&v["ideal"]["binomials"]), vec!["x*y - t^2"]);
}

#[test]
fn irreducible_components() {
    let v = json(&["decompose", "--mode", "irreducible", &fixture("split_ideal.json")]);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn pretty_output_parses_to_the_same_value() {
    let plain = json(&["restricted-subfans", &fixture("plane_wall_fan.json")]);
    let pretty = json(&["--pretty", "restricted-subfans", &fixture("plane_wall_fan.json")]);
    assert_eq!(plain, pretty);
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("monoretract-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("base.json");
    let out = run(&["--out", path.to_str().unwrap(), "find-base", &fixture("three_points.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(strings(&v["base"]), vec!["x", "y"]);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn inline_json_is_accepted() {
    let v = json(&["decompose", "--mode", "squarefree", r#"{"ring": ["a", "b"], "generators": ["a*b"]}"#]);
    assert_eq!(v["components"].as_array().unwrap().len(), 2);
}

#[test]
fn exit_codes() {
    // Not idempotent: x -> y, y -> x.
    let swap = r#"{"field": "Q", "ring": ["x", "y"], "ideal": ["x*y"], "phi": {"images": ["y", "x"]}, "theta": {"ring": ["x", "y"], "images": ["x", "y"]}}"#;
    assert_eq!(run(&["verify-retract", swap]).status.code(), Some(2));
    assert_eq!(run(&["find-base", swap]).status.code(), Some(2));
    assert_eq!(run(&["find-base", "{not json"]).status.code(), Some(1));
    assert_eq!(run(&["find-base", "/nonexistent/datum.json"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-verb"]).status.code(), Some(1));
    assert_eq!(run(&["--guard-n", "1", "--field", "F2", "enumerate", &fixture("path_ideal.json")]).status.code(), Some(4));
    let out = run(&["verify-base", &fixture("three_points.json"), "--base", "x,z"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["valid"], false);
}
