//! End-to-end checks of the command-line interface through the real binary.

use std::process::{Command, Output};

fn finlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finlat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn build_output_round_trips() {
    let out = finlat(&["build", "divisor:12"]);
    assert!(out.status.success());
    let dir = std::env::temp_dir().join("finlat-cli-roundtrip");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d12.json");
    std::fs::write(&path, stdout(&out)).unwrap();
    let again = finlat(&["build", path.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(stdout(&out), stdout(&again), "parse then re-emit is the identity");
}

#[test]
fn output_is_deterministic() {
    let a = finlat(&["classify", "divisor:60"]);
    let b = finlat(&["classify", "divisor:60"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical output for identical inputs");
}

#[test]
fn classify_single_element() {
    let out = finlat(&["classify", "divisor:12", "--element", "4"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let entries = parsed.as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["label"], "4");
    assert_eq!(entries[0]["strongly_irreducible"], true);

    let missing = finlat(&["classify", "divisor:12", "--element", "7"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn topology_verifies_and_reports() {
    let out = finlat(&["topology", "chain:4", "--kind", "closed"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["verified"], true);
    assert_eq!(parsed["spectrum"], serde_json::json!(["0", "a", "b"]));
}

#[test]
fn represent_emits_part_sets() {
    let out = finlat(&[
        "represent",
        "divisor:36",
        "--target",
        "1",
        "--kind",
        "si",
        "--max-size",
        "4",
    ]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["representations"], serde_json::json!([["4", "9"]]));
}

#[test]
fn abgroup_strongly_hollow_report() {
    let out = finlat(&["abgroup", "--factors", "4x9", "--report", "strongly-hollow"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["routes_agree"], true);
    let nonzero: Vec<u64> = parsed["strongly_hollow"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["order"].as_u64().unwrap())
        .filter(|&o| o > 1)
        .collect();
    assert_eq!(nonzero, [2, 3, 4, 9]);
}

#[test]
fn verify_transfer_localization() {
    let out = finlat(&["verify", "transfer", "--n", "12", "--p", "2"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["verified"], true);
}

#[test]
fn verify_transfer_random_battery() {
    let out = finlat(&["verify", "transfer", "--random", "25", "--seed", "11"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["battery"]["seed"], 11);
    assert_eq!(parsed["battery"]["failures"], serde_json::json!([]));
}

#[test]
fn verify_transfer_pair_file() {
    let dir = std::env::temp_dir().join("finlat-cli-pairs");
    std::fs::create_dir_all(&dir).unwrap();
    let lattice = dir.join("chain3.json");
    let chain3 = finlat(&["build", "chain:3"]);
    std::fs::write(&lattice, stdout(&chain3)).unwrap();
    let pair = dir.join("pair.json");
    std::fs::write(&pair, r#"{"G": [0, 1, 2], "F": [0, 1, 2]}"#).unwrap();
    let out = finlat(&[
        "verify",
        "transfer",
        "--pairs",
        pair.to_str().unwrap(),
        "--source",
        lattice.to_str().unwrap(),
        "--target",
        lattice.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["verified"], true);
}

#[test]
fn duplicate_covers_warn_but_parse() {
    let dir = std::env::temp_dir().join("finlat-cli-dup");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dup.json");
    std::fs::write(&path, r#"{"labels": ["0", "1"], "covers": [[0, 1], [0, 1]]}"#).unwrap();
    let out = finlat(&["build", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate cover"));
}

#[test]
fn cyclic_covers_are_a_usage_error() {
    let dir = std::env::temp_dir().join("finlat-cli-cycle");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycle.json");
    std::fs::write(
        &path,
        r#"{"labels": ["a", "b", "c"], "covers": [[0, 1], [1, 2], [2, 0]]}"#,
    )
    .unwrap();
    let out = finlat(&["build", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));
}

#[test]
fn unknown_spec_is_a_usage_error() {
    let out = finlat(&["classify", "heptagon:7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_limit_flag_is_honored() {
    let out = finlat(&["build", "boolean:4", "--limit", "8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds limit"));
}

#[test]
fn size_limit_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_finlat"))
        .args(["build", "boolean:4"])
        .env("FINLAT_SIZE_LIMIT", "8")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    // an explicit --limit flag wins over the environment
    let out = Command::new(env!("CARGO_BIN_EXE_finlat"))
        .args(["build", "boolean:4", "--limit", "100"])
        .env("FINLAT_SIZE_LIMIT", "8")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
}

#[test]
fn dual_of_dual_is_identity() {
    let doc = stdout(&finlat(&["build", "N5"]));
    let dir = std::env::temp_dir().join("finlat-cli-dual");
    std::fs::create_dir_all(&dir).unwrap();
    let p1 = dir.join("n5.json");
    std::fs::write(&p1, &doc).unwrap();
    let dual_doc = stdout(&finlat(&["dual", p1.to_str().unwrap()]));
    let p2 = dir.join("n5dual.json");
    std::fs::write(&p2, &dual_doc).unwrap();
    let back = stdout(&finlat(&["dual", p2.to_str().unwrap()]));
    assert_eq!(doc, back);
}
