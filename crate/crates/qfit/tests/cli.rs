//! End-to-end checks of the `qfit` binary: exit codes, output shapes,
//! and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn qfit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfit"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qfit-test-{}-{name}", std::process::id()))
}

#[test]
fn bounds_default_run_verifies() {
    let out = qfit(&["bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("thm1-lower"));
    assert!(text.contains("thm1-upper"));
    assert!(text.contains("chernoff"));
    assert!(text.contains("mitrinovic"));
    assert!(text.contains("result: verified"));
}

#[test]
fn bounds_only_selects_one_registered_curve() {
    let out = qfit(&["bounds", "--only", "mitrinovic"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("mitrinovic"));
    assert!(!text.contains("thm1-upper"));

    let bad = qfit(&["bounds", "--only", "nonexistent"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn bounds_csv_format() {
    let out = qfit(&["bounds", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.starts_with("check,side,max_violation,violation_x,max_gap,gap_x,ok\n"));
    assert!(text.contains("residual-lower"));
}

#[test]
fn bounds_rejects_too_coarse_step() {
    let out = qfit(&["bounds", "--step", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn derive_reports_twelve_digit_parameters() {
    let out = qfit(&["derive", "--t", "1.295"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("a = 3.73853780751e-1"), "{text}");
    assert!(text.contains("b = 7.76951913683e-1"), "{text}");
    assert!(text.contains("sup |Q - Qhat|"));
}

#[test]
fn derive_below_minimum_horizon_is_usage_error() {
    let out = qfit(&["derive", "--t", "0.0001"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn derive_without_horizon_is_usage_error() {
    let out = qfit(&["derive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tune_narrow_window_reports_horizon() {
    let out = qfit(&["tune", "--t-lo", "1.2", "--t-hi", "1.4", "--tol", "1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("t_opt = 1.29"), "{text}");
    assert!(text.contains("minimax |Q - Qhat|"));
}

#[test]
fn tune_rejects_inverted_window() {
    let out = qfit(&["tune", "--t-lo", "2.0", "--t-hi", "1.0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn profile_emits_pinned_csv_schema() {
    let out = qfit(&["profile", "--t", "1.295", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,q_ref,q_hat,err_signed,lb_thm1,ub_thm1,chernoff");
    assert_eq!(lines.len(), 6);
    assert!(lines[1].starts_with("0,0.5,0.5,0,"));
    assert!(!text.contains('\r'));
    for line in &lines[1..] {
        assert!(!line.ends_with(','), "trailing separator in {line:?}");
        assert_eq!(line.matches(',').count(), 6);
    }
}

#[test]
fn profile_table_format() {
    let out = qfit(&["profile", "--t", "1.295", "--n", "3", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.lines().next().unwrap().contains("q_ref"));
    assert!(!text.contains(','));
}

#[test]
fn profile_is_byte_deterministic() {
    let args = ["profile", "--t", "1.295", "--n", "101"];
    let first = qfit(&args);
    let second = qfit(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let path_a = temp_path("determinism-a.csv");
    let path_b = temp_path("determinism-b.csv");
    let file_args = |p: &PathBuf| {
        vec![
            "profile".to_string(),
            "--t".to_string(),
            "1.295".to_string(),
            "--out".to_string(),
            p.display().to_string(),
        ]
    };
    assert_eq!(
        Command::new(env!("CARGO_BIN_EXE_qfit"))
            .args(file_args(&path_a))
            .status()
            .unwrap()
            .code(),
        Some(0)
    );
    assert_eq!(
        Command::new(env!("CARGO_BIN_EXE_qfit"))
            .args(file_args(&path_b))
            .status()
            .unwrap()
            .code(),
        Some(0)
    );
    let bytes_a = std::fs::read(&path_a).unwrap();
    let bytes_b = std::fs::read(&path_b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b);
    let _ = std::fs::remove_file(path_a);
    let _ = std::fs::remove_file(path_b);
}

#[test]
fn profile_unwritable_path_is_io_error() {
    let out = qfit(&[
        "profile",
        "--t",
        "1.295",
        "--out",
        "/nonexistent-dir/profile.csv",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn profile_rejects_single_sample() {
    let out = qfit(&["profile", "--t", "1.295", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = qfit(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_and_derive_stdout_are_deterministic() {
    for args in [vec!["bounds"], vec!["derive", "--t", "2"]] {
        let first = qfit(&args);
        let second = qfit(&args);
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}
