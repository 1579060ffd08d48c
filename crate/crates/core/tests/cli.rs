use std::process::{Command, Output};

use serde_json::Value;

fn k3lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3lat")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn strip_timing(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn lattice_info_a0() {
    let out = k3lat(&["lattice", "info", "--name", "A0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["signature"], serde_json::json!([2, 5, 0]));
    assert_eq!(v["det"], -6);
    assert_eq!(v["even"], true);
    assert_eq!(v["disc"], serde_json::json!([2, 3]));
    assert_eq!(v["schema"], 1);
}

#[test]
fn lattice_info_inline_gram() {
    let v = json_of(&k3lat(&["lattice", "info", "--gram", "[[0,1],[1,0]]"]));
    assert_eq!(v["det"], -1);
    assert_eq!(v["signature"], serde_json::json!([1, 1, 0]));
}

#[test]
fn isometry_between_files_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let b1 = dir.path().join("B1.json");
    let a1 = dir.path().join("A1twist2.json");
    let w = dir.path().join("witness.json");
    let dump = |args: &[&str], path: &std::path::Path| {
        let out = k3lat(args);
        assert_eq!(out.status.code(), Some(0));
        std::fs::write(path, &out.stdout).unwrap();
    };
    dump(&["catalog", "dump", "--name", "B1"], &b1);
    dump(&["lattice", "dump", "--name", "A1", "--twist", "2"], &a1);
    let out = k3lat(&[
        "lattice", "isometry", "--left", b1.to_str().unwrap(), "--right", a1.to_str().unwrap(),
        "--witness", w.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"], "isometric");
    assert_eq!(v["verified"], true);
    let witness: Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(witness["P"], v["P"]);
}

#[test]
fn non_isometric_pair_exits_one() {
    let out = k3lat(&["lattice", "isometry", "--left", "B0", "--right", "A0(2)"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["result"], "not-isometric");
    assert!(v["reason"].as_str().unwrap().contains("192"));
}

#[test]
fn complement_of_m0() {
    let out = k3lat(&["lattice", "complement", "--compare", "A0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["span"]["primitive"], true);
    assert_eq!(v["complement"]["info"]["signature"], serde_json::json!([2, 5, 0]));
    assert_eq!(v["compare"]["result"], "isometric");
}

#[test]
fn fibers_classify_generic_and_rational_surface() {
    let out = k3lat(&["fibers", "classify", "--params", r#"{"a": ["1","1","1","1","1","1","1"]}"#]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["configuration"], "III* + IV* + 7 I1");
    assert_eq!(v["total_euler"], 24);
    assert_eq!(v["d84"], "9917532888584159232");

    let out = k3lat(&["fibers", "classify", "--params", "0,0,1,0,0,0,0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["error"]["kind"], "not-k3");
    assert!(v["error"]["message"].as_str().unwrap().contains("rational surface"));
}

#[test]
fn fibers_sample_type_i2() {
    let v = json_of(&k3lat(&["fibers", "sample", "--kind", "type-I2", "--seed", "3"]));
    assert_eq!(v["kind"], "type-I2");
    assert_eq!(v["configuration"], "III* + IV* + I2 + 5 I1");
    assert_eq!(v["d84"], "0");
}

#[test]
fn graded_commands() {
    let v = json_of(&k3lat(&["graded", "canonical", "--params", "2,4,6,8,10,12,14"]));
    assert_eq!(v["chart"], "u");
    assert_eq!(v["values"], serde_json::json!(["2", "6", "8", "20", "24", "56"]));
    let v = json_of(&k3lat(&["graded", "canonical", "--params", "0,2,3,5,7,11,13"]));
    assert_eq!(v["chart"], "t");
    assert_eq!(v["values"], serde_json::json!(["3", "5", "14", "22", "52"]));
    let v = json_of(&k3lat(&["graded", "humbert", "--params", "0,1,0,0,0,2,0"]));
    assert_eq!(v["M"], "4");
    let v = json_of(&k3lat(&["graded", "hilbert", "--system", "u", "--k", "2"]));
    assert_eq!(v["count"], 1);
}

#[test]
fn verify_only_single_check() {
    let out = k3lat(&["verify", "all", "--only", "thm62", "--json", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "thm62");
    assert_eq!(checks[0]["status"], "pass");
}

#[test]
fn verify_report_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = k3lat(&["verify", "all", "--seed", "5", "--json", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let read = |p: &std::path::Path| strip_timing(serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap());
    let (a, b) = (read(&paths[0]), read(&paths[1]));
    assert_eq!(a, b);
    assert_eq!(a["schema"], 1);
    assert_eq!(a["seed"], 5);
    assert_eq!(a["summary"]["pass"], 11);
}

#[test]
fn tampered_catalog_fails_with_check_id() {
    let out = k3lat(&["verify", "all", "--tamper", "B2", "--json", "-"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let failing: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"catalog"), "{failing:?}");
}

#[test]
fn usage_and_io_errors_exit_two() {
    assert_eq!(k3lat(&["verify", "all", "--only", "nope"]).status.code(), Some(2));
    assert_eq!(k3lat(&["lattice", "info", "--gram", "[[0,1],[2,0]]"]).status.code(), Some(2));
    assert_eq!(k3lat(&["lattice", "info", "--file", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(k3lat(&["lattice", "info", "--name", "Q9"]).status.code(), Some(2));
    assert_eq!(k3lat(&["fibers", "classify", "--params", "1,2,3"]).status.code(), Some(2));
    assert_eq!(k3lat(&["frobnicate"]).status.code(), Some(2));
    let out = k3lat(&["verify", "all", "--json", "/nonexistent/dir/r.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "io");
}

#[test]
fn help_exits_zero() {
    assert_eq!(k3lat(&["--help"]).status.code(), Some(0));
}
