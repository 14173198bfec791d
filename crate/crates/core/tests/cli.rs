//! End-to-end runs of the `rfg` binary.

use std::process::{Command, Output};

use rfg_core::harness::CSV_HEADER;

fn rfg(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rfg"))
        .env("RFG_CACHE", cache)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn kval_prints_k_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let o = rfg(
        dir.path(),
        &[
            "kval",
            "--group",
            "free(2)",
            "--element",
            "abAB",
            "--variant",
            "nilpotent",
        ],
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("k = 8\n")
            && out.contains("status = exact")
            && out.contains("witness = symmetric-image;order=8;")
    );
    let o = rfg(dir.path(), &["kval", "--group", "z", "--element", "2520"]);
    assert!(stdout(&o).starts_with("k = 11\n"));
    let o = rfg(
        dir.path(),
        &[
            "kval",
            "--group",
            "free(2)",
            "--element",
            "abAB",
            "--qmax",
            "5",
        ],
    );
    assert!(!o.status.success());
}

#[test]
fn kval_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["kval", "--group", "free(2)", "--element", "abAB"];
    let cold = stdout(&rfg(dir.path(), &args));
    let records = std::fs::read_to_string(dir.path().join("records.tsv")).unwrap();
    assert!(records.starts_with("free(2)|any|abAB\t6\t"));
    assert_eq!(stdout(&rfg(dir.path(), &args)), cold);
}

#[test]
fn growth_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z.csv");
    let o = rfg(
        dir.path(),
        &[
            "growth",
            "--group",
            "z",
            "--radius",
            "6",
            "--method",
            "exact",
            "--out",
            csv.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    assert_eq!(lines[6], "6,4,6,6,congruence-mod-m,4,exact");

    let json = dir.path().join("heis.json");
    let o = rfg(
        dir.path(),
        &[
            "growth",
            "--group",
            "heis",
            "--radius",
            "4",
            "--method",
            "nilpotent",
            "--out",
            json.to_str().unwrap(),
        ],
    );
    assert!(o.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["rows"][3]["F"], "8");
}

#[test]
fn growth_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    assert!(!rfg(
        dir.path(),
        &["growth", "--group", "sl(2)", "--radius", "2", "--method", "exact"]
    )
    .status
    .success());
    assert!(!rfg(
        dir.path(),
        &[
            "growth",
            "--group",
            "sl(9)",
            "--radius",
            "2",
            "--method",
            "congruence"
        ]
    )
    .status
    .success());
}

#[test]
fn verify_reports_json_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = rfg(dir.path(), &["verify", "--suite", "products"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "products");
    assert!(v["tool_version"].is_string());
    // The dichotomy check fails at radius 4, so this suite exits nonzero.
    let o = rfg(dir.path(), &["verify", "--suite", "nilquot"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["status"] == "fail"));
}

#[test]
fn witness_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&rfg(dir.path(), &["witness", "--kind", "lcm", "--n", "10"]));
    assert!(out.contains("element = 2520\n") && out.contains("k = 11\n"));
    let out = stdout(&rfg(
        dir.path(),
        &["witness", "--kind", "elementary", "--n", "7"],
    ));
    assert!(
        out.contains("element = 1 420 0;0 1 0;0 0 1")
            && out.contains("least detecting prime power = 8")
    );
    let out = stdout(&rfg(
        dir.path(),
        &["witness", "--kind", "grig-deep", "--n", "2"],
    ));
    assert!(out.contains("trivial sections at level 2 = true"));
}
