use std::process::{Command, Output};

use serde_json::Value;

fn finring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finring")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = finring(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn report_z4() {
    let v = json(&["report", "--ring", "Z(4)", "--json"]);
    assert_eq!(v["ring"], "Z(4)");
    assert_eq!(v["order"], 4);
    assert_eq!(v["characteristic"], 4);
    assert_eq!(v["boolean"], false);
    assert_eq!(v["unit_count"], 2);
    assert_eq!(v["unit_sum"], "0");
    assert_eq!(v["radical"], serde_json::json!(["0", "2"]));
    assert_eq!(v["semisimple"], false);
}

#[test]
fn report_boolean_and_triangular() {
    let v = json(&["report", "--ring", "B(3)", "--json"]);
    assert_eq!((v["boolean"].as_bool(), v["unit_count"].as_u64()), (Some(true), Some(1)));
    assert_eq!(v["units_trivial"], true);
    let v = json(&["report", "--ring", "UT(2, Z(2))", "--json"]);
    assert_eq!(v["unit_count"], 2);
    assert_eq!(v["unit_sum"], "[[0,1],[0,0]]");
    let v = json(&["report", "--ring", "GF(8)", "--json"]);
    assert_eq!(v["is_division_ring"], true);
}

#[test]
fn skipped_radical_omits_both_fields() {
    let v = json(&["report", "--ring", "Z(4)", "--json", "--skip-radical"]);
    assert!(v.get("radical").is_none());
    assert!(v.get("semisimple").is_none());
}

#[test]
fn unit_sums() {
    for (ring, count, sum) in [("M(2, GF(4))", 180, "[[0,0],[0,0]]"), ("GF(9)", 8, "0"), ("Z(2)", 1, "1")] {
        let v = json(&["unit-sum", "--ring", ring, "--json"]);
        assert_eq!(v["unit_count"], count, "{ring}");
        assert_eq!(v["unit_sum"], sum, "{ring}");
    }
}

#[test]
fn gl_orders() {
    for (n, q, want) in [("2", "2", "6"), ("1", "7", "6"), ("3", "2", "168")] {
        let out = finring(&["gl-order", n, q]);
        assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), want);
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(finring(&["report", "--ring", "GF(6)"]).status.code(), Some(2));
    assert_eq!(finring(&["report", "--ring", "M(2 GF(4))"]).status.code(), Some(2));
    assert_eq!(finring(&["verify"]).status.code(), Some(2));
    assert_eq!(finring(&["enumerate", "4", "--resume", "nonsense"]).status.code(), Some(2));
}

#[test]
fn enumerate_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("order4.txt");
    let out = finring(&["enumerate", "4", "--up-to-iso", "--jobs", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(finring::TableRing::parse_many(&text).unwrap().len(), 4);
    let out = finring(&["enumerate", "2"]);
    assert_eq!(finring::TableRing::parse_many(&String::from_utf8_lossy(&out.stdout)).unwrap().len(), 1);
}

#[test]
fn enumerate_order_12_without_budget_exits_3_with_token() {
    let out = finring(&["enumerate", "12"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resume token: 12:0:0"));
}

#[test]
fn verify_main_and_all() {
    let out = finring(&["verify", "--theorem", "main", "--max-order", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&["verify", "--all", "--max-order", "4", "--json"]);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r["passed"] == true && r["complete"] == true));
}
