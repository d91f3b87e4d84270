use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn visibility(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_visibility"))
        .args(args)
        .env_remove("VISIBILITY_DATASET")
        .output()
        .expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("visibility-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn table4_small_instances_pass() {
    let out = visibility(&["tables", "verify", "--filter", "table4", "--max-ambient", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let records = report["records"].as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["table"], 4);
        assert!(r["status"] == "pass" || r["status"] == "boundary", "{r}");
    }
}

#[test]
fn exceptional_row_is_data_only() {
    let out = visibility(&["tables", "verify", "--filter", "row=10"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    let records = report["records"].as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records.iter().all(|r| r["status"] == "data-only"));
}

#[test]
fn markdown_report() {
    let out = visibility(&["tables", "verify", "--filter", "table1:1", "--max-ambient", "4", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| row |"));
    assert!(text.contains("su(1,1)"));
}

#[test]
fn report_is_byte_identical_across_runs() {
    let path = scratch("report.json");
    let p = path.to_str().unwrap();
    let args = ["tables", "verify", "--filter", "table2", "--max-ambient", "6", "--out", p];
    assert_eq!(visibility(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(visibility(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read(&path).unwrap());
}

#[test]
fn empty_dataset_is_a_data_error() {
    let path = scratch("empty.toml");
    std::fs::write(&path, "schema_version = 1\nrow = []\n").unwrap();
    let out = visibility(&["tables", "verify", "--dataset", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_dataset_from_env_is_a_data_error() {
    let path = scratch("broken.toml");
    std::fs::write(&path, "schema_version = [\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_visibility"))
        .args(["tables", "verify"])
        .env("VISIBILITY_DATASET", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dataset"));
}

#[test]
fn unknown_filter_table_is_usage_error() {
    assert_eq!(visibility(&["tables", "verify", "--filter", "table9"]).status.code(), Some(2));
    assert_eq!(visibility(&["tables", "frobnicate"]).status.code(), Some(2));
}

#[test]
fn certify_sl2_compact_subgroup() {
    let out = visibility(&["certify", "sl2R:K"]);
    assert_eq!(out.status.code(), Some(0));
    let cert = json(&out);
    assert_eq!(cert["status"], "pass");
    assert_eq!(cert["samples"], 100);
    assert_eq!(cert["action"], "sl2R:K");
}

#[test]
fn certify_is_seed_deterministic() {
    let a = visibility(&["certify", "sp2R:GL2R", "--seed", "7"]);
    let b = visibility(&["certify", "sp2R:GL2R", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
}

#[test]
fn certify_writes_file() {
    let path = scratch("cert.json");
    let out = visibility(&["certify", "su2:SO2", "--samples", "10", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let cert: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(cert["samples"], 10);
}

#[test]
fn unreachable_tolerance_is_inconclusive() {
    let out = visibility(&["certify", "sl2R:K", "--samples", "5", "--restarts", "1", "--tol", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "inconclusive");
}

#[test]
fn unsupported_action() {
    let out = visibility(&["certify", "e6:anything"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported action"));
}

#[test]
fn actions_listing() {
    let out = visibility(&["actions"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "su6:II-1"));
}

#[test]
fn sl3_k_epsilon_listing() {
    let out = visibility(&["epsilon", "sl(3,R)"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    // One compact fixed algebra for the trivial signature, split rank one otherwise.
    assert!(lines[0].starts_with("(++)") && lines[0].contains("rank 0"));
    assert!(lines[1..].iter().all(|l| l.contains("dim 3") && l.contains("rank 1")));
    assert_eq!(text, String::from_utf8(visibility(&["epsilon", "sl(3,R)"]).stdout).unwrap());
}

#[test]
fn rank_zero_listing_has_one_line() {
    let out = visibility(&["epsilon", "su(2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn su22_row3_listing() {
    let out = visibility(&["epsilon", "su(2,2)", "--row", "3", "--max-ambient", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let n = text.lines().count();
    assert!(n >= 2 && n.is_power_of_two());
    assert!(text.lines().all(|l| l.contains("  pass  ")));
}

#[test]
fn unknown_family() {
    assert_eq!(visibility(&["epsilon", "g2"]).status.code(), Some(2));
}
