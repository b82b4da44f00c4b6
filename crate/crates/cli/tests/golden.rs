//! Pins the exact JSON report for five reference inputs.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_geon"))
        .current_dir(manifest_dir())
        .arg("--json")
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).expect("utf-8 output");
    let v: Value =
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("invalid JSON ({e}):\n{text}"));
    (v, out.status.code().expect("exit code"))
}

fn check(name: &str, args: &[&str], status: i32) {
    let (actual, code) = run_json(args);
    assert_eq!(code, status, "{name}: exit status");
    assert_eq!(actual["status"], status, "{name}: reported status");
    let path: PathBuf = manifest_dir()
        .join("tests/golden")
        .join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        let text = serde_json::to_string_pretty(&actual).unwrap() + "\n";
        std::fs::write(&path, text).unwrap();
        return;
    }
    let expected = read_golden(&path);
    assert_eq!(
        actual,
        expected,
        "{name}: report differs from {}",
        path.display()
    );
}

fn read_golden(path: &Path) -> Value {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&text).unwrap()
}

#[test]
fn classify_lens_15() {
    check(
        "classify_lens_15_1_4",
        &["classify-lens", "15", "1", "4"],
        0,
    );
}

#[test]
fn analyze_mixed_sum() {
    check(
        "analyze_mixed",
        &["analyze-manifold", "tests/fixtures/mixed.json"],
        0,
    );
}

#[test]
fn build_mcg_two_rp3() {
    check(
        "build_mcg_rp3",
        &[
            "build-mcg",
            "tests/fixtures/rp3.json",
            "--emit-automorphisms",
            "--emit-presentation",
        ],
        0,
    );
}

#[test]
fn decide_word_z2_star_z2() {
    check(
        "decide_word_ab",
        &[
            "decide-word",
            "--presentation",
            "tests/fixtures/z2z2.json",
            "--word",
            "a b",
        ],
        0,
    );
}

#[test]
fn enumerate_homs_into_s3() {
    check(
        "enumerate_homs_s3",
        &[
            "enumerate-homs",
            "tests/fixtures/z2z2.json",
            "--degree",
            "3",
        ],
        0,
    );
}
