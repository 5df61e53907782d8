//! End-to-end checks of the command-line interface.

use std::process::Command;

fn totgraph(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_totgraph"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn ring_info_prints_structure_and_json() {
    let (stdout, _, code) = totgraph(&["ring", "info", "Z6", "--json", "-"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("order       6"));
    let json_start = stdout.find('{').unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout[json_start..]).unwrap();
    assert_eq!(v["order"], 6);
    assert_eq!(v["zero_divisors"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(v["maximal_ideals"][0]["residue_size"], 2);
}

#[test]
fn graph_build_exports_dot_and_json() {
    let dir = std::env::temp_dir().join("totgraph-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("z4.dot");
    let json = dir.join("z4.json");
    let (_, _, code) = totgraph(&[
        "graph",
        "build",
        "--ring",
        "Z4",
        "--kind",
        "total",
        "--dot",
        dot.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.contains("v0 -- v2"));
    assert!(dot_text.contains("v1 -- v3"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["n"], 4);
    assert_eq!(v["edges"], serde_json::json!([[0, 2], [1, 3]]));
}

#[test]
fn color_reports_construction_and_verdict() {
    let (stdout, _, code) = totgraph(&["color", "--ring", "Z12", "--kind", "total"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("6 colors"));
    assert!(stdout.contains("proper: yes"));
}

#[test]
fn color_exports_dot_with_color_attributes() {
    let dir = std::env::temp_dir().join("totgraph-cli-color");
    std::fs::create_dir_all(&dir).unwrap();
    let dot = dir.join("z6.dot");
    let (_, _, code) = totgraph(&[
        "color",
        "--ring",
        "Z6",
        "--kind",
        "total",
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(
        text.contains("color=") && text.contains("label=\"(1,1)\""),
        "{text}"
    );
}

#[test]
fn solve_chi_and_omega() {
    let (stdout, _, code) = totgraph(&[
        "solve", "--ring", "Z3 x Z3", "--kind", "total", "--what", "chi",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("chi = 4"));
    let (stdout, _, code) = totgraph(&[
        "solve", "--ring", "Z3 x Z3", "--kind", "total", "--what", "omega",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("omega = 4"));
}

#[test]
fn latin_prints_array_and_flag_controls_variant() {
    let (stdout, _, code) = totgraph(&["latin", "--f1", "Z3", "--f2", "Z3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("alphabet size 4"));
    assert!(stdout.contains("latin-sum: valid"));
    let (stdout, _, code) = totgraph(&["latin", "--f1", "GF(2)", "--f2", "Z5", "--reg"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("alphabet size 4"));
}

#[test]
fn verify_total_small_pool_exits_zero() {
    let (stdout, _, code) =
        totgraph(&["verify", "total", "--pool", "Z2,Z3,Z4", "--max-order", "16"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("fail=0"));
    assert!(stdout.contains("EXCEPTION Z3"));
}

#[test]
fn verify_writes_report_files() {
    let dir = std::env::temp_dir().join("totgraph-cli-report");
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let csv = dir.join("report.csv");
    let (_, _, code) = totgraph(&[
        "verify",
        "reg",
        "--pool",
        "Z2,Z3",
        "--max-order",
        "12",
        "--report",
        report.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["version"], "1");
    assert!(v["summary"]["fail"] == 0);
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("ring,order,kind,branch"));
    assert_eq!(
        csv_text.lines().count(),
        v["rows"].as_array().unwrap().len() + 1
    );
}

#[test]
fn explore_conjecture_certifies_z3z3() {
    let (stdout, _, code) =
        totgraph(&["explore", "conjecture", "--pool", "Z3", "--max-order", "9"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("predicted=4"));
    assert!(stdout.contains("PASS"));
}

#[test]
fn parse_errors_exit_nonzero_with_position() {
    let (_, stderr, code) = totgraph(&["ring", "info", "Z4 y Z3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("position 3"), "stderr: {stderr}");
}
