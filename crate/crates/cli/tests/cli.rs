//! End-to-end tests against the compiled binary: exit codes, output
//! determinism, and descriptor round-trips.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use qsync_core::QsyncDescriptor;

fn qsync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsync"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qsync_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsync"))
        .args(args)
        .env("QSYNC_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

fn construct_forty(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("forty.json");
    let run = qsync(&[
        "construct", "--m", "5", "--d1", "7", "--d2", "3", "--al", "4", "--ar", "5", "--out",
        path_str(&out),
    ]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    out
}

fn construct_nine(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("nine.json");
    let run = qsync(&[
        "construct", "--n", "7", "--phase-gen", "x^3+x+1", "--bit-gen", "1", "--al", "1", "--ar",
        "1", "--out", path_str(&out),
    ]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    out
}

#[test]
fn construct_writes_a_revalidating_descriptor() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_forty(dir.path());

    let run = qsync(&[
        "construct", "--m", "5", "--d1", "7", "--d2", "3", "--al", "4", "--ar", "5", "--out",
        path_str(&descriptor),
    ]);
    assert!(stdout(&run).contains("(4,5)-[[40,1]]: phase radius 3, bit radius 1"));

    // Read it back through the library and re-run every construction check.
    let raw = fs::read_to_string(&descriptor).unwrap();
    let parsed: QsyncDescriptor = serde_json::from_str(&raw).unwrap();
    let rebuilt = parsed.reconstruct().expect("descriptor re-validates");
    assert_eq!(rebuilt.n_ext(), 40);
    assert_eq!(rebuilt.sync_table().len(), 10);

    let table = qsync(&["table", "--descriptor", path_str(&descriptor)]);
    assert_eq!(table.status.code(), Some(0));
    // Header plus one row per tolerated slip.
    assert_eq!(stdout(&table).lines().count(), 2 + 10);
}

#[test]
fn construct_names_the_violated_clause() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rejected.json");
    let run = qsync(&[
        "construct", "--m", "5", "--d1", "5", "--d2", "3", "--al", "5", "--ar", "0", "--out",
        path_str(&out),
    ]);
    assert_eq!(run.status.code(), Some(1));
    assert!(
        stderr(&run).contains("slip tolerances"),
        "stderr: {}",
        stderr(&run)
    );
    assert!(!out.exists(), "rejected construction must not write");
}

#[test]
fn tampered_descriptor_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_nine(dir.path());
    let raw = fs::read_to_string(&descriptor).unwrap();
    let tampered = raw.replace("\"k_logical\": 1", "\"k_logical\": 3");
    assert_ne!(raw, tampered, "tamper target present");
    fs::write(&descriptor, tampered).unwrap();

    let run = qsync(&["table", "--descriptor", path_str(&descriptor)]);
    assert_eq!(run.status.code(), Some(1));
    assert!(
        stderr(&run).contains("k_logical"),
        "stderr: {}",
        stderr(&run)
    );
}

#[test]
fn simulate_is_deterministic_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_forty(dir.path());
    let run_once = |csv: &Path, summary: &Path, seed: &str, threads: &str| {
        let run = qsync_with_threads(
            &[
                "simulate", "--descriptor", path_str(&descriptor), "--trials", "300", "--p-bit",
                "0.05", "--p-phase", "0.1", "--clamp", "--seed", seed, "--csv", path_str(csv),
                "--summary", path_str(summary),
            ],
            threads,
        );
        assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    };

    let (a_csv, a_sum) = (dir.path().join("a.csv"), dir.path().join("a.json"));
    let (b_csv, b_sum) = (dir.path().join("b.csv"), dir.path().join("b.json"));
    let (c_csv, c_sum) = (dir.path().join("c.csv"), dir.path().join("c.json"));
    run_once(&a_csv, &a_sum, "7", "4");
    run_once(&b_csv, &b_sum, "7", "1");
    run_once(&c_csv, &c_sum, "8", "4");

    // Same seed: byte-identical outputs, even across thread counts.
    assert_eq!(fs::read(&a_csv).unwrap(), fs::read(&b_csv).unwrap());
    assert_eq!(fs::read(&a_sum).unwrap(), fs::read(&b_sum).unwrap());
    // Different seed: a different trial stream.
    assert_ne!(fs::read(&a_csv).unwrap(), fs::read(&c_csv).unwrap());
}

#[test]
fn simulate_quiet_channel_always_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_nine(dir.path());
    let csv = dir.path().join("t.csv");
    let summary = dir.path().join("t.json");
    let run = qsync(&[
        "simulate", "--descriptor", path_str(&descriptor), "--trials", "64", "--seed", "3",
        "--csv", path_str(&csv), "--summary", path_str(&summary),
    ]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(parsed["success_rate"], 1.0);
    assert_eq!(parsed["counts"]["success"], 64);
    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 1 + 64);
}

#[test]
fn simulate_rejects_probabilities_outside_unit_interval() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_nine(dir.path());
    let run = qsync(&[
        "simulate", "--descriptor", path_str(&descriptor), "--trials", "10", "--p-bit", "1.5",
        "--seed", "1", "--csv", path_str(&dir.path().join("x.csv")), "--summary",
        path_str(&dir.path().join("x.json")),
    ]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("--p-bit"), "stderr: {}", stderr(&run));
}

#[test]
fn exhaustive_exit_codes_distinguish_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_nine(dir.path());

    let clean = qsync(&[
        "exhaustive", "--descriptor", path_str(&descriptor), "--max-phase-weight", "1",
        "--all-branches",
    ]);
    assert_eq!(clean.status.code(), Some(0), "stderr: {}", stderr(&clean));
    assert!(stdout(&clean).contains("contract holds over 480 cases"));

    let violated = qsync(&[
        "exhaustive", "--descriptor", path_str(&descriptor), "--max-phase-weight", "2",
        "--all-branches",
    ]);
    assert_eq!(violated.status.code(), Some(2));
    assert!(
        stdout(&violated).contains("phase_failure"),
        "stdout: {}",
        stdout(&violated)
    );
}

#[test]
fn exhaustive_over_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_forty(dir.path());
    let run = qsync(&[
        "exhaustive", "--descriptor", path_str(&descriptor), "--max-bit-weight", "3",
        "--max-phase-weight", "3",
    ]);
    assert_eq!(run.status.code(), Some(3));
    assert!(stderr(&run).contains("budget"), "stderr: {}", stderr(&run));
}

#[test]
fn oracle_certifies_the_small_code() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_nine(dir.path());
    let run = qsync(&["oracle", "--descriptor", path_str(&descriptor)]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    let text = stdout(&run);
    assert!(
        text.contains("60 cases (60 successes)"),
        "stdout: {text}"
    );
    assert!(text.contains("max |1 - fidelity|"), "stdout: {text}");
}

#[test]
fn oracle_refuses_large_codes_by_budget() {
    let dir = tempfile::tempdir().unwrap();
    let descriptor = construct_forty(dir.path());
    let run = qsync(&["oracle", "--descriptor", path_str(&descriptor)]);
    assert_eq!(run.status.code(), Some(3));
    assert!(stderr(&run).contains("20"), "stderr: {}", stderr(&run));
}
