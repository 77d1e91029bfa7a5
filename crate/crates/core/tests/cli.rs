//! End-to-end checks of the binary: exit codes, determinism, exports.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qmargulis"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn construct_summary_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p5.json");
    let args = [
        "construct", "--p", "5", "--size-a", "2", "--size-b", "3",
        "--seed", "3", "--out", path.to_str().unwrap(),
    ];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let summary = stdout(&first);
    let fields: Vec<&str> = summary.lines().next().unwrap().split(' ').collect();
    assert_eq!(fields.len(), 6);
    assert_eq!(fields[0], "240");
    assert_eq!(fields[5], "5");
    let second = run(&args);
    assert_eq!(stdout(&second), summary);
}

#[test]
fn construct_rejects_non_prime() {
    let out = run(&["construct", "--p", "4", "--size-a", "2", "--size-b", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_rejects_zero_budget() {
    let out = run(&[
        "search", "--p", "5", "--size-a", "2", "--size-b", "3",
        "--target-girth", "8", "--budget", "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_exhausted_budget_exits_3() {
    let out = run(&[
        "search", "--p", "5", "--size-a", "2", "--size-b", "3",
        "--target-girth", "20", "--budget", "5",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

fn construct_descriptor(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("code.json");
    let out = run(&[
        "construct", "--p", "5", "--size-a", "2", "--size-b", "3",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    path
}

#[test]
fn inspect_verifies_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let desc = construct_descriptor(dir.path());
    let alist = dir.path().join("hx.alist");
    let out = run(&[
        "inspect", "--code", desc.to_str().unwrap(),
        "--export-alist", alist.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("verified"));
    let alist_text = std::fs::read_to_string(&alist).unwrap();
    assert_eq!(alist_text.lines().next(), Some("240 120"));
}

#[test]
fn inspect_tampered_descriptor_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let desc = construct_descriptor(dir.path());
    let text = std::fs::read_to_string(&desc).unwrap();
    let tampered = text.replacen("\"k\": 8", "\"k\": 9", 1);
    assert_ne!(text, tampered, "expected k field in descriptor");
    std::fs::write(&desc, tampered).unwrap();
    let out = run(&["inspect", "--code", desc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn simulate_zero_rate_and_worker_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let desc = construct_descriptor(dir.path());
    let csv = |workers: &str, out_path: &str| {
        let out = run(&[
            "simulate", "--code", desc.to_str().unwrap(),
            "--p-list", "0.0,0.05",
            "--min-trials", "60", "--target-failures", "1000000",
            "--max-trials", "60", "--max-iters", "30",
            "--seed", "5", "--workers", workers, "--out", out_path,
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read_to_string(out_path).unwrap()
    };
    let a = csv("1", dir.path().join("a.csv").to_str().unwrap());
    let b = csv("8", dir.path().join("b.csv").to_str().unwrap());
    assert_eq!(a, b);
    let rows: Vec<&str> = a.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 3);
    let zero_row: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(zero_row[1], "0"); // p_phys
    assert_eq!(zero_row[3], "0"); // failures
}
