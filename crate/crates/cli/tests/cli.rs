use std::process::{Command, Output};

use serde_json::{json, Value};

fn lrpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lr_all_methods_agree() {
    let out = lrpoly(&["lr", "2,1,0", "2,1,0", "3,2,1", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        json_of(&out),
        json!({"hive": 2, "steinberg": 2, "tableaux": 2, "system": 2, "agree": true})
    );
}

#[test]
fn lr_sum_mismatch_is_zero_with_reason() {
    let out = lrpoly(&["lr", "1", "1", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["hive"], 0);
    assert_eq!(v["reason"], "sum mismatch");
}

#[test]
fn stretch_output() {
    let v = json_of(&lrpoly(&["stretch", "2,1", "2,1", "3,2,1"]));
    assert_eq!(v["polynomial"], "N+1");
    assert_eq!(v["p0"], "1");
}

#[test]
fn stretch_all_methods() {
    let out = lrpoly(&["stretch", "2,1", "1,1", "3,2", "--method", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["agree"], true);
    assert_eq!(v["tableaux"]["polynomial"], v["hive"]["polynomial"]);
}

#[test]
fn kostant_and_chambers() {
    assert_eq!(json_of(&lrpoly(&["kostant", "3", "2,0,-2"]))["count"], 3);
    assert_eq!(json_of(&lrpoly(&["kostant", "3", "1,1,-2"]))["count"], 2);
    let v = json_of(&lrpoly(&["chambers", "2"]));
    let mut polys: Vec<&str> = v["regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["polynomial"].as_str().unwrap())
        .collect();
    polys.sort();
    assert_eq!(polys, ["1 + v1", "1 + v2"]);
}

#[test]
fn matrix_has_expected_shape() {
    let v = json_of(&lrpoly(&["matrix", "3"]));
    assert_eq!(v["k"], 3);
    assert_eq!(v["E"].as_array().unwrap().len(), 9);
    assert_eq!(v["B"][0], json!([1, 0, 0, 0, 0, 0, 1, 0, 0]));
}

#[test]
fn verify_k3_is_deterministic() {
    let a = lrpoly(&["verify-k3", "--samples", "2", "--seed", "5"]);
    let b = lrpoly(&["verify-k3", "--samples", "2", "--seed", "5"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["passed"], true);
    assert_eq!(v["cones"].as_array().unwrap().len(), 18);
}

#[test]
fn generic_and_ktt() {
    let v = json_of(&lrpoly(&["generic", "4,1,0", "3,1,0", "5,3,1"]));
    assert_eq!(v["generic"], false);
    assert!(v["signature_digest"].is_null());
    let v = json_of(&lrpoly(&["generic", "14,8,2", "14,8,2", "22,14,12"]));
    assert_eq!(v["generic"], true);
    assert_eq!(v["signature_digest"].as_str().unwrap().len(), 64);
    let v = json_of(&lrpoly(&["ktt", "2,1", "2,1", "3,2,1"]));
    assert_eq!(v["p0_is_one"], true);
    assert_eq!(v["coefficients_nonnegative"], true);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("lrpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = lrpoly(&["lr", "2,1", "1", "3,1", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["hive"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["lr", "x", "1", "1"][..],
        &["lr", "1,2", "1", "2"],
        &["frobnicate"],
        &["kostant", "3", "1,1"],
        &["chambers", "9"],
        &["ktt", "1", "1", "3"],
        &["--cache", "somewhere", "matrix", "3"],
    ] {
        assert_eq!(lrpoly(args).status.code(), Some(2), "{args:?}");
    }
}
