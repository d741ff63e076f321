//! End-to-end tests of the `entroghz` binary: flag handling, output
//! formats, exit codes, and reproducibility of written files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_entroghz"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = binary().args(args).output().expect("binary runs");
    (
        status.code().expect("exit code"),
        String::from_utf8(stdout).expect("utf-8 stdout"),
        String::from_utf8(stderr).expect("utf-8 stderr"),
    )
}

fn fresh_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("entroghz-cli-{}-{}", std::process::id(), name));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn json(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout).expect("valid JSON output")
}

#[test]
fn paradox_text_shows_the_maximal_violation() {
    let (code, out, _) = run(&["paradox"]);
    assert_eq!(code, 0);
    assert!(out.contains("H(A1·B1·C1) = 1.0000 bits"), "{}", out);
    assert!(out.contains("H(A1·B2·C2) = 0.0000 bits"), "{}", out);
    assert!(out.contains("margin = -1.0000"), "{}", out);
    assert!(out.contains("VIOLATED"), "{}", out);
}

#[test]
fn paradox_under_full_noise_is_not_violated() {
    let (code, out, _) = run(&["paradox", "--noise", "1.0"]);
    assert_eq!(code, 0);
    assert!(out.contains("not violated"), "{}", out);
    assert!(out.contains("rhs_total = 3.0000"), "{}", out);
}

#[test]
fn paradox_json_uses_the_frozen_field_names() {
    let (code, out, _) = run(&["paradox", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    for field in ["lhs", "rhs_terms", "rhs_total", "margin", "violated", "labels"] {
        assert!(v.get(field).is_some(), "missing field {}", field);
    }
    assert!((v["h_d"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert!((v["margin"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert_eq!(v["violated"], serde_json::Value::Bool(true));
    assert_eq!(v["labels"][0], "A1B1C1");
}

#[test]
fn paradox_near_the_threshold_is_marginal() {
    let (code, out, _) = run(&["paradox", "--noise", "0.123", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!((v["rhs_total"].as_f64().unwrap() - 1.0).abs() < 0.01);
}

#[test]
fn paradox_accepts_explicit_xy_angles() {
    // Explicit angles equal to the preset reproduce the preset values.
    let spec = format!(
        "xy:{t1},{t2},{t1},{t2},{t1},{t2}",
        t1 = std::f64::consts::FRAC_PI_6,
        t2 = -std::f64::consts::PI / 12.0
    );
    let (code, out, _) = run(&["paradox", "--angles", &spec, "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!((v["margin"].as_f64().unwrap() + 1.0).abs() < 1e-9);
}

#[test]
fn paradox_usage_errors_exit_one() {
    assert_eq!(run(&["paradox", "--state", "singlet"]).0, 1);
    assert_eq!(run(&["paradox", "--noise", "1.5"]).0, 1);
    assert_eq!(run(&["paradox", "--angles", "xy:1,2,3"]).0, 1);
    assert_eq!(run(&["paradox", "--angles", "degrees:1,2,3,4,5,6"]).0, 1);
}

#[test]
fn threshold_mermin3_lands_at_one_half() {
    let (code, out, _) = run(&["threshold", "--family", "mermin3", "--tol", "1e-4", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let p = v["p_star"].as_f64().unwrap();
    assert!((0.499..=0.501).contains(&p), "p* = {}", p);
    assert_eq!(v["expected"].as_f64().unwrap(), 0.5);
}

#[test]
fn threshold_entropic3_lands_in_band() {
    let (code, out, _) = run(&["threshold", "--family", "entropic3", "--tol", "1e-4", "--format", "json"]);
    assert_eq!(code, 0);
    let p = json(&out)["p_star"].as_f64().unwrap();
    assert!((0.121..=0.125).contains(&p), "p* = {}", p);
}

#[test]
fn threshold_bc2_optimizes_then_lands_in_band() {
    let (code, out, _) = run(&["threshold", "--family", "bc2", "--tol", "1e-4", "--format", "json"]);
    assert_eq!(code, 0);
    let v = json(&out);
    let p = v["p_star"].as_f64().unwrap();
    assert!((0.03..=0.05).contains(&p), "p* = {}", p);
    assert!(v["optimized"]["params"][0].as_f64().unwrap() > 0.0);
}

#[test]
fn threshold_sweep_emits_csv_rows() {
    let (code, out, _) = run(&[
        "threshold",
        "--family",
        "entropic3",
        "--tol",
        "1e-3",
        "--sweep",
        "0:0.2:5",
        "--jobs",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.trim().lines().collect();
    assert_eq!(lines[0], "p,lhs,rhs_total,margin");
    assert_eq!(lines.len(), 6);
    let margins: Vec<f64> = lines[1..]
        .iter()
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    assert!(margins.windows(2).all(|w| w[0] <= w[1]), "{:?}", margins);
    assert!(margins[0] < -0.9);
}

#[test]
fn threshold_without_violation_reports_cleanly() {
    // All-X settings never violate: margin is 0 at every noise level.
    let (code, out, _) = run(&[
        "threshold",
        "--family",
        "entropic3",
        "--angles",
        "xy:0,0,0,0,0,0",
    ]);
    assert_eq!(code, 0, "no-threshold is a verdict, not an error");
    assert!(out.contains("no threshold"), "{}", out);
}

#[test]
fn threshold_rejects_bad_sweep_specs() {
    assert_eq!(run(&["threshold", "--family", "mermin3", "--sweep", "bad"]).0, 1);
    assert_eq!(run(&["threshold", "--family", "mermin3", "--sweep", "0.5:0.1:5"]).0, 1);
    assert_eq!(run(&["threshold", "--family", "mermin3", "--sweep", "0:2:5"]).0, 1);
}

#[test]
fn compress_writes_ten_reproducible_files() {
    let dir_a = fresh_dir("compress-a");
    let dir_b = fresh_dir("compress-b");
    let args = |dir: &PathBuf| {
        vec![
            "compress".to_string(),
            "-n".to_string(),
            "256".to_string(),
            "--seed".to_string(),
            "3".to_string(),
            "--out-dir".to_string(),
            dir.display().to_string(),
        ]
    };
    let (code, out, _) = run(&args(&dir_a).iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert_eq!(code, 0);
    assert!(out.contains("wrote 10 bit-string files"), "{}", out);
    let (code, _, _) = run(&args(&dir_b).iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert_eq!(code, 0);

    let names = [
        "a1.bits",
        "a2.bits",
        "b1.bits",
        "b2.bits",
        "c1.bits",
        "c2.bits",
        "xor_a1b1c1.bits",
        "xor_a1b2c2.bits",
        "xor_a2b1c2.bits",
        "xor_a2b2c1.bits",
    ];
    for name in names {
        let a = std::fs::read(dir_a.join(name)).expect(name);
        let b = std::fs::read(dir_b.join(name)).expect(name);
        assert_eq!(a, b, "{} differs between identical runs", name);
        // 8-byte little-endian bit length, then ⌈256/8⌉ payload bytes.
        assert_eq!(u64::from_le_bytes(a[..8].try_into().unwrap()), 256);
        assert_eq!(a.len(), 8 + 32);
    }
    let _ = std::fs::remove_dir_all(&dir_a);
    let _ = std::fs::remove_dir_all(&dir_b);
}

#[test]
fn compress_honors_the_output_dir_env_var() {
    let dir = fresh_dir("compress-env");
    let output = binary()
        .args(["compress", "-n", "32", "--seed", "1"])
        .env("ENTROGHZ_OUT_DIR", &dir)
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    assert!(dir.join("a1.bits").exists());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn compress_usage_errors_exit_one() {
    assert_eq!(run(&["compress", "-n", "8"]).0, 1);
    assert_eq!(run(&["compress", "--codec", "gzip"]).0, 1);
    assert_eq!(run(&["compress", "--state", "singlet"]).0, 1);
}

#[test]
fn compress_io_failure_exits_three() {
    let blocker = std::env::temp_dir().join(format!("entroghz-blocker-{}", std::process::id()));
    std::fs::write(&blocker, b"not a directory").unwrap();
    let target = blocker.join("sub");
    let (code, _, err) = run(&[
        "compress",
        "-n",
        "32",
        "--out-dir",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code, 3, "stderr: {}", err);
    let _ = std::fs::remove_file(&blocker);
}

#[test]
fn compress_json_includes_verdict_and_files() {
    let dir = fresh_dir("compress-json");
    let (code, out, _) = run(&[
        "compress",
        "-n",
        "4096",
        "--seed",
        "9",
        "--out-dir",
        dir.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["files"].as_array().unwrap().len(), 10);
    assert_eq!(v["violated"], serde_json::Value::Bool(true));
    assert!(v["side_condition_met"].as_bool().unwrap());
    assert_eq!(v["strings"].as_array().unwrap().len(), 4);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_subsets_run_and_pass() {
    let (code, out, _) = run(&["verify", "--suites", "sign-ghz"]);
    assert_eq!(code, 0);
    assert!(out.contains("sign-ghz"));
    assert!(out.contains("PASS"));

    let (code, out, _) = run(&["verify", "--suites", "codec,metric", "--samples", "30", "--jobs", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("PASS").count(), 2);
}

#[test]
fn verify_csv_lists_suite_counts() {
    let (code, out, _) = run(&["verify", "--suites", "metric", "--samples", "20", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.trim().lines().collect();
    assert_eq!(lines[0], "suite,cases,failures");
    assert_eq!(lines[1], "metric,20,0");
}

#[test]
fn verify_rejects_unknown_suites() {
    let (code, _, err) = run(&["verify", "--suites", "nonsense"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown suite"), "{}", err);
}

#[test]
fn help_and_version_exit_zero_and_missing_command_exits_one() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&[]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
}
