//! Binary-level checks: exit codes, output shapes, and byte-stable reports.

use std::process::{Command, Output};

fn matchtop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchtop"))
        .args(args)
        .env_remove("MATCHTOP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn predict_and_dims_shapes() {
    let out = matchtop(&["predict", "Gamma:5:2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"spheres":{"4":"7"}}"#);

    let out = matchtop(&["predict", "Gamma:5:0"]);
    assert_eq!(stdout(&out).trim(), "\"contractible\"");

    let out = matchtop(&["predict-matching", "7", "1"]);
    assert_eq!(stdout(&out).trim(), "\"void\"");

    let out = matchtop(&["dims", "9", "3"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["d_min"], 7);
    assert_eq!(doc["d_max"], 7);
    assert_eq!(doc["count"], "31");
}

#[test]
fn homology_outputs() {
    let out = matchtop(&["homology", "--family", "Lambda:5:0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"betti":{"1":7}}"#);

    let out = matchtop(&["homology", "--matching", "--product", "4x3"]);
    assert_eq!(stdout(&out).trim(), r#"{"betti":{"3":1}}"#);

    // Restricting the dimension window.
    let out = matchtop(&["homology", "--family", "Lambda:5:0", "--dims", "0..0"]);
    assert_eq!(stdout(&out).trim(), r#"{"betti":{}}"#);

    // Folding first must not change the profile.
    let plain = matchtop(&["homology", "--family", "Gamma:5:2"]);
    let folded = matchtop(&["homology", "--family", "Gamma:5:2", "--fold"]);
    assert_eq!(stdout(&plain), stdout(&folded));
}

#[test]
fn homology_of_graph_file_defaults_to_matching() {
    let dir = std::env::temp_dir().join("matchtop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("empty.json");
    std::fs::write(&path, r#"{"vertices":[],"edges":[]}"#).unwrap();
    let out = matchtop(&["homology", "--graph", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"void":true,"betti":{}}"#);
}

#[test]
fn exit_code_two_on_parse_errors() {
    assert_eq!(matchtop(&["homology", "--family", "Nope:9:9"]).status.code(), Some(2));
    assert_eq!(matchtop(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(matchtop(&["dims", "2", "5"]).status.code(), Some(2));
}

#[test]
fn exit_code_one_on_budget_abort() {
    let out = matchtop(&[
        "homology",
        "--family",
        "Gamma:5:2",
        "--max-simplices",
        "50",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("error"));
}

#[test]
fn exit_code_one_on_bad_replay_step() {
    let dir = std::env::temp_dir().join("matchtop-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_script.json");
    std::fs::write(&path, r#"[{"rule":"fold","v":"g:1:1","w":"g:2:1"}]"#).unwrap();
    let out = matchtop(&[
        "replay",
        path.to_str().unwrap(),
        "--family",
        "Gamma:5:1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("step 0"));
}

#[test]
fn exit_code_three_on_strict_skips() {
    // A tiny budget forces over-budget skips; strict mode turns that into 3.
    let out = matchtop(&[
        "verify",
        "recurrences",
        "--strict",
        "--max-n",
        "0",
        "--max-simplices",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_exit_zero_with_known_discrepancies() {
    let out = matchtop(&["verify", "tables"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("known-discrepancy"));
    assert!(text.contains("0 mismatched"));
}

#[test]
fn reports_are_byte_stable() {
    let a = matchtop(&["verify", "tables", "--json"]);
    let b = matchtop(&["verify", "tables", "--json"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = matchtop(&["verify", "components", "--json"]);
    let d = matchtop(&["verify", "components", "--json"]);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn replay_check_reports_consistency() {
    let out = matchtop(&[
        "replay",
        concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/scripts/claim5_2.json"),
        "--family",
        "A:3:2",
        "--check",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["check"]["consistent"], true);
    assert_eq!(doc["steps"][0]["rule"], "simplicial_split");
}

#[test]
fn budget_env_variable_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_matchtop"))
        .args(["homology", "--family", "Gamma:5:2"])
        .env("MATCHTOP_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // ... and the flag wins over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_matchtop"))
        .args(["homology", "--family", "Gamma:5:2", "--max-simplices", "5000000"])
        .env("MATCHTOP_BUDGET", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
