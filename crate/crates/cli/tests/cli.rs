use std::path::Path;
use std::process::{Command, Output};

use pcube::SetFamily;
use serde_json::Value;

fn pcube(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcube"))
        .args(args)
        .env_remove("PCUBE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_family(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn check_reports_both_predicates() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "f.txt", "d=2\n00\n10\n11\n");
    let out = pcube(&["check", &f]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("union-closed: true"));
    assert!(text.contains("simply-rooted: true"));
}

#[test]
fn measure_json_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "f.txt", "d=2\n00\n10\n11\n");
    let out = pcube(&["--format", "json-lines", "measure", &f, "-w", "1/3,1/4"]);
    assert_eq!(out.status.code(), Some(0));
    let records: Vec<Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    // q1 q2 + p1 q2 + p1 p2 = 1/2 + 1/4 + 1/12
    assert!(records.iter().any(|r| r["measure"] == "5/6"));
}

#[test]
fn dimension_mismatch_is_an_input_error_with_empty_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "f.txt", "d=2\n00\n10\n11\n");
    let out = pcube(&["measure", &f, "-w", "1/3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension"));
}

#[test]
fn malformed_family_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "bad.txt", "d=2\n0\n");
    let out = pcube(&["check", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn printed_weighted_form_failure_does_not_set_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "cube.txt", "d=1\n0\n1\n");
    let dumps = dir.path().join("dumps");
    let out = pcube(&[
        "verify",
        &f,
        "--theorem",
        "karpas-weighted",
        "-w",
        "1/4",
        "--dump-dir",
        dumps.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("reported only, not asserted"));
    assert!(text.contains("conclusion: fails"));
    assert!(!dumps.exists());
}

#[test]
fn degenerate_dictator_is_not_a_violation() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "dictator.txt", "d=1\n1\n");
    let dumps = dir.path().join("dumps");
    let out = pcube(&[
        "--format",
        "json-lines",
        "verify",
        &f,
        "--theorem",
        "simply-rooted",
        "-w",
        "1/2",
        "--dump-dir",
        dumps.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!dumps.exists());
}

#[test]
fn explicit_theorem_outside_its_preconditions_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "f.txt", "d=2\n10\n01\n");
    let out = pcube(&["verify", &f, "--theorem", "karpas-uniform"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn all_theorems_skip_inapplicable_checks() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "f.txt", "d=2\n10\n01\n");
    let out = pcube(&["verify", &f, "--theorem", "all", "-w", "2/3,3/4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("skipped"));
}

#[test]
fn emitted_families_parse_back() {
    let out = pcube(&["enumerate", "--d", "2", "--emit"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let families: Vec<SetFamily> = text
        .split("\n\n")
        .filter(|b| !b.trim().is_empty())
        .map(|b| SetFamily::parse(b).unwrap())
        .collect();
    assert_eq!(families.len(), 14);
    assert!(families.iter().all(SetFamily::is_union_closed));
}

#[test]
fn results_do_not_depend_on_jobs() {
    let run = |jobs: &str, args: &[&str]| {
        let mut full = vec!["--format", "json-lines", "--jobs", jobs, "--seed", "11"];
        full.extend_from_slice(args);
        let out = pcube(&full);
        assert_eq!(out.status.code(), Some(0));
        stdout(&out)
    };
    let exhaustive = [
        "verify",
        "--exhaustive-d",
        "3",
        "--theorem",
        "karpas-weighted",
        "--random-weights",
        "2",
    ];
    let search = ["search", "--d", "3", "-w", "1/3,1/2,2/3", "--budget", "150"];
    for args in [&exhaustive[..], &search[..]] {
        let one = run("1", args);
        assert_eq!(one, run("2", args));
        assert_eq!(one, run("8", args));
    }
}

#[test]
fn seed_flag_and_environment_agree() {
    let by_flag = pcube(&["--seed", "9", "sample", "-w", "1/3,1/2", "--draws", "5"]);
    let by_env = Command::new(env!("CARGO_BIN_EXE_pcube"))
        .args(["sample", "-w", "1/3,1/2", "--draws", "5"])
        .env("PCUBE_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(by_flag.stdout, by_env.stdout);
    assert_eq!(stdout(&by_flag).lines().count(), 5);
}

#[test]
fn weights_can_come_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_family(dir.path(), "f.txt", "d=2\n00\n10\n11\n");
    let w = write_family(dir.path(), "w.txt", "\n1/3, 1/4\n");
    let literal = pcube(&["measure", &f, "-w", "1/3,1/4"]);
    let from_file = pcube(&["measure", &f, "-w", &w]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(literal.stdout, from_file.stdout);
}
