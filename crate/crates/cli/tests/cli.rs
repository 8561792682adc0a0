//! End-to-end checks of the binary: subcommand wiring, artifact files,
//! exit-code contract, and run-to-run reproducibility of artifacts.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_indsub"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write_petersen(dir: &Path) -> PathBuf {
    let path = dir.join("petersen.graph");
    let edges = "nodes 10\n0 1\n0 4\n0 5\n1 2\n1 6\n2 3\n2 7\n3 4\n3 8\n4 9\n5 7\n5 8\n6 8\n6 9\n7 9\n";
    fs::write(&path, edges).unwrap();
    path
}

#[test]
fn analyze_reports_petersen_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_petersen(dir.path());
    let out = run(&["analyze", graph.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("n=10"));
    assert!(stdout.contains("m=15"));
    assert!(stdout.contains("girth=5"));
    assert!(stdout.contains("degeneracy=3"));
    assert!(stdout.contains("connectivity=3"));
}

#[test]
fn gen_named_then_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("heawood.graph");
    let out = run(&["gen", "--family", "named:heawood", "--out", graph.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let out = run(&["analyze", graph.to_str().unwrap()]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("n=14"));
    assert!(stdout.contains("girth=6"));
}

#[test]
fn gen_regular_requires_seed() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("reg.graph");
    let out = run(&[
        "gen", "--family", "regular", "--n", "10", "--d", "3", "--girth", "5", "--out",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3, "missing --seed is a usage error");
    let out = run(&[
        "gen", "--family", "regular", "--n", "10", "--d", "3", "--girth", "5", "--seed", "7",
        "--out", graph.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn find_induced_on_cycle_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c9.graph");
    run(&["gen", "--family", "named:cycle:9", "--out", graph.to_str().unwrap()]);
    let out = run(&["find", graph.to_str().unwrap(), "--target", "4", "--mode", "induced"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().contains("not found"));
}

#[test]
fn find_verify_round_trip_on_petersen() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_petersen(dir.path());
    let cert = dir.path().join("pete.cert");
    let out = run(&[
        "find", graph.to_str().unwrap(), "--target", "4", "--mode", "induced", "--cert",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&["verify", graph.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("induced: yes"));
}

#[test]
fn verify_detects_planted_violation() {
    let dir = tempfile::tempdir().unwrap();
    // 1-subdivision of a triangle plus a chord between two subdivision
    // vertices: plain yes, induced no.
    let graph = dir.path().join("g.graph");
    fs::write(&graph, "0 3\n3 1\n1 4\n4 2\n2 5\n5 0\n3 4\n").unwrap();
    let cert = dir.path().join("g.cert");
    fs::write(
        &cert,
        "branch 3: 0 1 2\npath 1 2: 0 3 1\npath 1 3: 0 5 2\npath 2 3: 1 4 2\n",
    )
    .unwrap();
    let out = run(&["verify", graph.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("plain: yes"));
    assert!(stdout.contains("induced: no"));
}

#[test]
fn lemma_unbalanced_via_roles_file() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("unb.graph");
    let roles = dir.path().join("unb.roles");
    let out = run(&[
        "gen", "--family", "planted:unbalanced", "--seed", "5", "--out",
        graph.to_str().unwrap(), "--roles", roles.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let cert = dir.path().join("unb.cert");
    let report = dir.path().join("unb.report");
    let out = run(&[
        "lemma", "unbalanced", graph.to_str().unwrap(), "--roles", roles.to_str().unwrap(),
        "--seed", "9", "--cert", cert.to_str().unwrap(), "--report", report.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["verify", graph.to_str().unwrap(), cert.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let report_text = fs::read_to_string(&report).unwrap();
    assert!(report_text.contains("stage unbalanced"));
    // Same seed, same artifacts.
    let cert_a = fs::read_to_string(&cert).unwrap();
    let out = run(&[
        "lemma", "unbalanced", graph.to_str().unwrap(), "--roles", roles.to_str().unwrap(),
        "--seed", "9", "--cert", cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(cert_a, fs::read_to_string(&cert).unwrap());
}

#[test]
fn lemma_main_hypothesis_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c30.graph");
    run(&["gen", "--family", "named:cycle:30", "--out", graph.to_str().unwrap()]);
    let out = run(&["lemma", "main", graph.to_str().unwrap(), "--seed", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_profile_key_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_petersen(dir.path());
    let out = run(&[
        "lemma", "main", graph.to_str().unwrap(), "--seed", "1", "--set", "bogus_key=3",
    ]);
    assert_eq!(code(&out), 3);
}
