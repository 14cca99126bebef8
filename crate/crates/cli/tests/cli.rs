use std::path::Path;
use std::process::{Command, Output};

use ameforge_cli::{cmd_verify, ExitStatus, Mode};
use ameforge_core::AmeState;
use proptest::prelude::*;

fn ameforge(args: &[&str], env_budget: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ameforge"));
    cmd.args(args).env_remove("AMEFORGE_BUDGET");
    if let Some(b) = env_budget {
        cmd.env("AMEFORGE_BUDGET", b);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const BELL: &str = "n=2 d=2\n0 0 0.7071067811865476 0\n1 1 0.7071067811865476 0\n";

#[test]
fn verify_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let bell = write(dir.path(), "bell.txt", BELL);
    assert_eq!(code(&ameforge(&["verify", &bell], None)), 0);
    for mode in ["combinatorial", "dense", "both"] {
        assert_eq!(code(&ameforge(&["verify", "--mode", mode, &bell], None)), 0);
    }

    let pair = write(
        dir.path(),
        "pair.txt",
        "n=3 d=2\n0 0 0 0.7071067811865476 0\n1 1 0 0.7071067811865476 0\n",
    );
    let json = dir.path().join("pair.json");
    let out = ameforge(&["verify", "--both", &pair, "--json", json.to_str().unwrap()], None);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("B=[2]"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(json).unwrap()).unwrap();
    assert_eq!(report["pass"], false);
    assert_eq!(report["verdicts_agree"], true);
    let failing: Vec<&serde_json::Value> = report["reports"]["dense"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .map(|r| &r["subset"])
        .collect();
    assert_eq!(failing, vec![&serde_json::json!([2])]);

    let skewed = write(dir.path(), "skewed.txt", "n=2 d=2\n0 0 0.8 0\n1 1 0.6 0\n");
    assert_eq!(code(&ameforge(&["verify", &skewed], None)), 1);
    assert_eq!(code(&ameforge(&["verify", "--mode", "dense", &skewed], None)), 1);

    let garbage = write(dir.path(), "garbage.txt", "n=2 d=2\n0 x 1 0\n");
    assert_eq!(code(&ameforge(&["verify", &garbage], None)), 2);
    assert_eq!(code(&ameforge(&["verify", "/nonexistent/state"], None)), 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["construct"],
        vec!["construct", "x", "3"],
        vec!["construct", "1", "3"],
        vec!["construct", "4", "6"],
        vec!["table", "2"],
        vec!["search", "6", "4", "2"],
        vec!["search", "5", "3", "3"],
        vec!["search", "5", "6", "3", "--certificate"],
        vec!["verify", "x", "--mode", "fast"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&ameforge(&args, None)), 2, "{args:?}");
    }
    assert_eq!(code(&ameforge(&["search", "5", "6", "3"], Some("lots"))), 2);
}

#[test]
fn small_n_constructions() {
    let dir = tempfile::tempdir().unwrap();
    for (n, d) in [(2, 2), (2, 6), (3, 6), (3, 10)] {
        let out = dir.path().join(format!("s{n}{d}"));
        assert_eq!(code(&ameforge(&["construct", &n.to_string(), &d.to_string(), "--out", out.to_str().unwrap()], None)), 0);
        let state = AmeState::from_text(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(state.support_size(), d);
        assert_eq!(code(&ameforge(&["verify", out.to_str().unwrap()], None)), 0);
    }
}

#[test]
fn budget_precedence() {
    let partial = ameforge(&["search", "5", "7", "3", "--budget", "10"], None);
    assert_eq!(code(&partial), 3);
    assert!(String::from_utf8_lossy(&partial.stderr).contains("0 MDS codes"));
    assert_eq!(code(&ameforge(&["search", "5", "7", "3"], Some("10"))), 3);
    // the flag wins over the environment
    assert_eq!(code(&ameforge(&["search", "5", "6", "3", "--budget", "1000000"], Some("10"))), 0);
}

#[test]
fn search_output() {
    let out = ameforge(&["search", "5", "7", "3"], None);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 MDS codes"));
    let out = ameforge(&["search", "5", "6", "3"], None);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("first witness P = ["));
}

#[test]
fn certificate_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("cert.json");
    let out = ameforge(&["search", "5", "7", "3", "--certificate", "--json", json.to_str().unwrap()], None);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let cert = ameforge_core::Certificate::from_json(&std::fs::read_to_string(&json).unwrap()).unwrap();
    cert.validate().unwrap();
    assert_eq!(cert.conclusion.as_deref(), Some("N(5)=6"));

    let partial = dir.path().join("partial.json");
    let out = ameforge(&["search", "5", "7", "3", "--certificate", "--budget", "100", "--json", partial.to_str().unwrap()], None);
    assert_eq!(code(&out), 3);
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&partial).unwrap()).unwrap();
    assert_eq!(value["status"], "incomplete");
    assert!(value["conclusion"].is_null());
}

#[test]
fn json_reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for args in [vec!["table", "8"], vec!["construct", "5", "4"], vec!["search", "4", "5", "3"]] {
        let mut outputs = Vec::new();
        for i in 0..2 {
            let json = dir.path().join(format!("r{i}.json"));
            let mut full = args.clone();
            full.extend(["--json", json.to_str().unwrap()]);
            assert_eq!(code(&ameforge(&full, None)), 0);
            outputs.push(std::fs::read(json).unwrap());
        }
        assert_eq!(outputs[0], outputs[1], "{args:?}");
    }
}

#[test]
fn json_to_stdout() {
    let out = ameforge(&["table", "5", "--json", "-"], None);
    let stdout = String::from_utf8_lossy(&out.stdout);
    let rows: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Arbitrary file contents: exit 2 exactly when the state parser rejects
    /// the file, and never 3.
    #[test]
    fn malformed_state_files(text in "(n=[0-9] d=[0-9]\n)?([0-9 .x-]{0,12}\n){0,4}") {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.txt");
        std::fs::write(&path, &text).unwrap();
        let outcome = cmd_verify(&path, Mode::Both);
        match AmeState::from_text(&text) {
            Err(_) => prop_assert_eq!(outcome.status, ExitStatus::Usage),
            Ok(_) => prop_assert!(matches!(outcome.status, ExitStatus::Success | ExitStatus::VerificationFailed)),
        }
    }
}
