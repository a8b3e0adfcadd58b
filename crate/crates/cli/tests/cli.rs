use assert_cmd::Command;
use serde_json::Value;

fn lietype() -> Command {
    Command::cargo_bin("lietype").unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = lietype().args(args).args(["--format", "json"]).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn census_json_has_schema_and_total() {
    let v = json(&["unipotent", "census", "--type", "E8"]);
    assert_eq!(v["schema"], "lietype.census/1");
    assert_eq!(v["total"], 166);
    assert_eq!(v["cuspidal"], 13);
    let sizes: u64 = v["series"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["cuspidals"].as_array().unwrap().len() as u64 * s["irr_count"].as_u64().unwrap())
        .sum();
    assert_eq!(sizes, 166);
}

#[test]
fn census_is_deterministic_across_exec_modes() {
    let a = lietype().args(["unipotent", "census", "--type", "F4", "--format", "json"]).output().unwrap();
    let b = lietype().args(["--sequential", "unipotent", "census", "--type", "F4", "--format", "json"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_csv_has_header() {
    let out = lietype().args(["unipotent", "census", "--type", "G2", "--format", "csv"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("J,levi,relative,cuspidals,irr_count,size"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn relative_type_of_twisted_e6() {
    lietype().args(["weyl", "relative", "--type", "2E6", "--J", ""]).assert().success().stdout("F4\n");
    let v = json(&["weyl", "relative", "--type", "E7", "--J", "2,3,4,5"]);
    assert_eq!(v["relative"], "B3");
}

#[test]
fn verify_gl2_uniform_all_exits_zero() {
    lietype().args(["dl", "verify", "--group", "GL2", "--q", "3", "--check", "uniform-all"]).assert().success();
}

#[test]
fn verify_all_reports_every_check() {
    let v = json(&["dl", "verify", "--group", "SL2", "--q", "5", "--all"]);
    assert_eq!(v["schema"], "lietype.dlverify/1");
    let outcomes = v["outcomes"].as_array().unwrap();
    assert_eq!(outcomes.len(), 13);
    assert!(outcomes.iter().all(|o| o["passed"] == true));
}

#[test]
fn table_json_shape() {
    let v = json(&["dl", "table", "--group", "SL2", "--q", "7"]);
    assert_eq!(v["schema"], "lietype.dltable/1");
    assert_eq!(v["characters"].as_array().unwrap().len(), 11);
    assert_eq!(v["classes"].as_array().unwrap().len(), 11);
    assert_eq!(v["order"], 336);
}

#[test]
fn orders_and_zset() {
    let v = json(&["rootdata", "orders", "--group", "SL2"]);
    assert_eq!(v["schema"], "lietype.orders/1");
    assert_eq!(v["steinberg_identity"], true);
    let v = json(&["rootdata", "zset", "--group", "SL2", "--n", "2", "--q", "7", "--lambda", "1"]);
    let elems = v["elements"].as_array().unwrap();
    assert_eq!(elems.len(), 2);
    assert_eq!(elems[0]["witness"][0], 3);
    assert_eq!(elems[1]["witness"][0], 4);
}

#[test]
fn usage_errors_exit_two() {
    lietype().args(["dl", "verify", "--group", "SL2", "--q", "4", "--all"]).assert().code(2);
    lietype().args(["dl", "verify", "--group", "SL2", "--q", "5", "--check", "nope"]).assert().code(2);
    lietype().args(["weyl", "order", "--type", "E9"]).assert().code(2);
    lietype().args(["weyl", "order", "--type", "E6", "--unknown-flag"]).assert().code(2);
    lietype().args(["rootdata", "zset", "--group", "SL2", "--n", "7", "--q", "7", "--lambda", "1"]).assert().code(2);
}

#[test]
fn weyl_counts() {
    lietype().args(["weyl", "order", "--type", "E6"]).assert().success().stdout("51840\n");
    lietype().args(["weyl", "classes", "--type", "D4", "--brute-force"]).assert().success().stdout("13 (enumeration: 13)\n");
}

#[test]
fn cap_env_var_limits_enumeration() {
    lietype().env("LIETYPE_W_CAP", "100").args(["weyl", "classes", "--type", "E6", "--brute-force"]).assert().code(2);
}
