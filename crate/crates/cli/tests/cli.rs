//! The `elx` binary: exit status, report formats, fuel and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name).display().to_string()
}

fn elx(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_elx"));
    cmd.args(args).env_remove("ELX_FUEL");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("elx runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn check_reports_every_proof() {
    let out = elx(&["--report", "json-like", "check", &corpus("base.elx")], &[]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["schema"], "elx-report/1");
    assert_eq!(r["ok"], true);
    assert_eq!(r["checked"], 8);
    assert_eq!(r["proofs"][4]["name"], "mult");
    assert_eq!(r["proofs"][4]["status"], "checked");
}

#[test]
fn failures_exit_nonzero_with_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.elx");
    std::fs::write(&bad, "(proof bad (claim (N 0)) (intro1 x nat (abs n (axiom n (N x)))))\n").unwrap();
    let out = elx(&["--report", "json-like", "check", bad.to_str().unwrap()], &[]);
    assert!(!out.status.success());
    let r = json(&out);
    assert_eq!(r["ok"], false);
    assert_eq!(r["proofs"][0]["status"], "failed");
    assert_eq!(r["proofs"][0]["error"]["kind"], "kernel");

    std::fs::write(&bad, "(proof bad\n  (axoim h (N 0)))\n").unwrap();
    let out = elx(&["check", bad.to_str().unwrap()], &[]);
    assert!(!out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("2:3") && text.contains("`axoim`"), "{text}");
}

#[test]
fn run_decodes_numerals_under_both_strategies() {
    for strategy in ["normal-order", "stratified"] {
        let out = elx(
            &["--report", "json-like", "run", &corpus("base.elx"), "mult", "--strategy", strategy, "--", "3", "4"],
            &[],
        );
        assert!(out.status.success(), "{strategy}");
        let r = json(&out);
        assert_eq!(r["output"], 12);
        assert_eq!(r["strategy"], strategy);
        assert_eq!(r["cost"].is_object(), strategy == "stratified");
    }
    let out = elx(&["run", &corpus("base.elx"), "mult", "--", "3"], &[]);
    assert!(!out.status.success());
}

#[test]
fn fuel_comes_from_the_flag_then_the_environment() {
    let args = ["--report", "json-like", "run", &corpus("base.elx"), "mult", "--", "3", "4"];
    let out = elx(&args, &[("ELX_FUEL", "10")]);
    assert!(!out.status.success());
    let r = json(&out);
    assert_eq!(r["status"], "fuel-exhausted");
    assert_eq!(r["fuel"], 10);
    let mut with_flag = args.to_vec();
    with_flag.splice(5..5, ["--fuel", "1000"]);
    let out = elx(&with_flag, &[("ELX_FUEL", "10")]);
    assert!(out.status.success());
    assert_eq!(json(&out)["fuel"], 1000);
    assert_eq!(json(&elx(&args, &[]))["fuel"], 10_000_000);
}

#[test]
fn conform_flags_wrong_references() {
    let ok = elx(&["conform", &corpus("schemes.elx"), "double", "--ref", "double"], &[]);
    assert!(ok.status.success());
    let bad = elx(&["--report", "json-like", "conform", &corpus("base.elx"), "plus", "--ref", "mult", "--max", "2"], &[]);
    assert!(!bad.status.success());
    let r = json(&bad);
    assert_eq!(r["total"], 9);
    assert_eq!(r["samples"][1]["outcome"], "mismatch");
    assert_eq!(r["error"]["kind"], "nonconforming");
}

#[test]
fn eal_and_extract_report_types() {
    let out = elx(&["--report", "json-like", "eal", &corpus("base.elx"), "coercion"], &[]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["box_depth"], 2);
    assert!(r["eal_type"].as_str().unwrap().starts_with("(forall $X."));
    let out = elx(&["--report", "json-like", "extract", &corpus("theory.elx"), "two"], &[]);
    assert!(out.status.success());
    assert_eq!(json(&out)["type"], "nat");
    let out = elx(&["--report", "json-like", "run", &corpus("theory.elx"), "two"], &[]);
    assert_eq!(json(&out)["output"], 2);
    let out = elx(&["extract", &corpus("base.elx"), "nope"], &[]);
    assert!(!out.status.success());
}

#[test]
fn reports_are_deterministic() {
    for format in ["json-like", "text"] {
        let args = ["--verbose", "--report", format, "run", &corpus("schemes.elx"), "sum-id", "--strategy", "stratified", "--", "4"];
        let a = elx(&args, &[]);
        let b = elx(&args, &[]);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
