//! End-to-end tests of the binary: exit codes, output formats, determinism,
//! and agreement between the shipped fixture files and the built-in corpus.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilhodge"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn analyze_text_exits_zero() {
    let out = run(&["analyze", fixture("filiform_j1.json").to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("classification: non-integrable (Type 1)"));
    assert!(text.contains("result: OK"));
    assert!(text.contains("betti: [1, 2, 2, 2, 1]"));
}

#[test]
fn analyze_json_is_machine_readable() {
    let out = run(&[
        "analyze",
        fixture("kodaira_thurston_j2.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["invariants"]["q_irregularity"], 2);
    assert_eq!(value["invariants"]["sigma_tilde"], -4);
    assert_eq!(value["pages"]["first_stable"], 1);
    assert_eq!(value["all_checks_pass"], true);
    // diamond is indexed [p][q]
    assert_eq!(value["diamond"][1][1], 4);
}

#[test]
fn analyze_is_byte_deterministic() {
    let path = fixture("torus.json");
    let args = ["analyze", path.to_str().unwrap(), "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_with_metric_file() {
    let out = run(&[
        "analyze",
        fixture("filiform_j2.json").to_str().unwrap(),
        "--metric",
        fixture("metric_scaled.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["harmonic"]["metric_is_default"], false);
    assert_eq!(value["harmonic"]["serre_symmetric"], true);
}

#[test]
fn scan_runs_the_family() {
    let out = run(&["scan", fixture("filiform_scan.json").to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t=0"));
    assert!(text.contains("t=1"));
    assert!(text.contains("result: OK"));
}

#[test]
fn corpus_verify_exits_zero() {
    let out = run(&["corpus-verify"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("result: OK"));
    assert!(text.contains("filiform-j2"));
    // the reference-table annotation is printed with the entry
    assert!(text.contains("sigma_tilde"));
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["analyze", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_structure_exits_two() {
    let dir = std::env::temp_dir().join("nilhodge-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_j.json");
    std::fs::write(
        &path,
        r#"{
            "name": "bad",
            "dimension": 4,
            "brackets": [],
            "j_matrix": [
                ["1", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "1", "0"],
                ["0", "0", "0", "1"]
            ]
        }"#,
    )
    .unwrap();
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("not an almost complex structure"), "{err}");
}

#[test]
fn wrong_subcommand_for_document_kind() {
    let out = run(&["scan", fixture("torus.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["analyze", fixture("filiform_scan.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_match_builtin_corpus() {
    use nilhodge_core::corpus::{builtin_corpus, filiform_deformation_scan};
    use nilhodge_core::{parse_input, serialize_input, InputDocument};
    for entry in builtin_corpus() {
        let file = fixture(&format!("{}.json", entry.input.name.replace('-', "_")));
        let text =
            std::fs::read_to_string(&file).unwrap_or_else(|e| panic!("{}: {e}", file.display()));
        let InputDocument::Analysis(parsed) = parse_input(&text).unwrap() else {
            panic!("fixture {} is not an analysis input", file.display());
        };
        assert_eq!(parsed, entry.input, "fixture {} drifted", file.display());
        // files are stored in canonical form
        assert_eq!(
            text.trim_end(),
            serialize_input(&InputDocument::Analysis(parsed))
        );
    }
    let scan_file = fixture("filiform_scan.json");
    let text = std::fs::read_to_string(&scan_file).unwrap();
    let InputDocument::Scan(parsed) = parse_input(&text).unwrap() else {
        panic!("scan fixture kind");
    };
    assert_eq!(parsed, filiform_deformation_scan(8));
}

#[test]
fn report_echo_round_trips() {
    let out = run(&[
        "analyze",
        fixture("torus.json").to_str().unwrap(),
        "--format",
        "json",
    ]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let echoed = serde_json::to_string(&value["input"]).unwrap();
    use nilhodge_core::{parse_input, InputDocument};
    let InputDocument::Analysis(parsed) = parse_input(&echoed).unwrap() else {
        panic!("echo kind");
    };
    assert_eq!(parsed.name, "torus");
}
