//! End-to-end runs of the `miuct` binary: exit codes, output files, and
//! reproducibility across parallelism levels.

use std::path::PathBuf;
use std::process::Command;

fn miuct() -> Command {
    Command::new(env!("CARGO_BIN_EXE_miuct"))
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("miuct-cli-e2e");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bandit_run_writes_curves() {
    let out = temp_path("bandit.csv");
    let status = miuct()
        .args([
            "bandit",
            "--policy",
            "ucb1",
            "--policy",
            "miucb-ep",
            "--arms",
            "5",
            "--tasks",
            "4",
            "--horizon",
            "50",
            "--seed",
            "3",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "play,policy,cum_regret,optimal_pct");
    assert_eq!(lines.len(), 1 + 2 * 50);
    assert!(lines[1].starts_with("1,ucb1,"));
    assert!(lines[51].starts_with("1,miucb-ep,"));
    std::fs::remove_file(&out).unwrap();
}

#[test]
fn match_run_is_reproducible_across_parallelism() {
    let out1 = temp_path("match_p1.csv");
    let out8 = temp_path("match_p8.csv");
    for (out, parallel) in [(&out1, "1"), (&out8, "8")] {
        let status = miuct()
            .args([
                "match",
                "--game",
                "nogo9",
                "--engine-a",
                "miuct",
                "--engine-b",
                "uct:C=0.7",
                "--playouts",
                "8",
                "--games",
                "6",
                "--seed",
                "11",
                "--parallel",
                parallel,
                "--out",
            ])
            .arg(out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
    }
    let a = std::fs::read_to_string(&out1).unwrap();
    let b = std::fs::read_to_string(&out8).unwrap();
    assert_eq!(a, b, "records must not depend on the worker count");
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 1 + 6 + 1);
    assert_eq!(lines[0], "game,black,winner,moves,seed");
    assert!(lines[1].starts_with("0,A,"));
    assert!(lines[2].starts_with("1,B,"));
    assert!(lines[7].starts_with("# win_rate_a="));
    std::fs::remove_file(&out1).unwrap();
    std::fs::remove_file(&out8).unwrap();
}

#[test]
fn usage_errors_exit_2_without_partial_output() {
    let out = temp_path("never_written.csv");
    // Missing --game.
    let output = miuct()
        .args(["match", "--engine-a", "miuct", "--engine-b", "uct:C=0.5", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!out.exists());
    // Unknown flag.
    let output = miuct()
        .args(["bandit", "--policy", "ucb1", "--out"])
        .arg(&out)
        .arg("--frobnicate")
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(!out.exists());
}

#[test]
fn runtime_errors_exit_1() {
    // Unknown policy name is caught after parsing: runtime failure.
    let output = miuct()
        .args([
            "bandit",
            "--policy",
            "ucb9000",
            "--out",
            "/tmp/miuct-never.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("ucb9000"));

    // Unwritable output path.
    let output = miuct()
        .args([
            "bandit",
            "--policy",
            "ucb1",
            "--arms",
            "3",
            "--tasks",
            "1",
            "--horizon",
            "5",
            "--out",
            "/nonexistent-dir/out.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(1));
}
