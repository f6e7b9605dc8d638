use std::process::{Command, Output};

use serde_json::Value;

fn drhp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drhp")).args(args).env_remove("DRHP_TARGET_REL_ERROR").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_resolvent_passes() {
    let out = drhp(&["verify", "resolvent", "--theta", "1", "--nmax", "40", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert!(v["max_abs_diff"].as_f64().unwrap() <= 1e-8);
}

#[test]
fn verify_resolvent_fails_on_impossible_tolerance() {
    let out = drhp(&["verify", "resolvent", "--theta", "1", "--nmax", "40", "--tol", "1e-30"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn rho_at_zero_intensity_is_zero() {
    let out = drhp(&["rho", "--method", "det", "--theta", "0", "--points", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"], 0.0);
    assert_eq!(v["method"], "det");
}

#[test]
fn sampling_is_reproducible() {
    let args = ["sample", "--theta", "4", "--n", "1000", "--seed", "7"];
    let a = drhp(&args);
    let b = drhp(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = drhp(&["sample", "--theta", "4", "--n", "1000", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(drhp(&["--no-such-flag"]).status.code(), Some(2));
    assert_eq!(drhp(&["rho", "--method", "det", "--theta", "1", "--points", "2"]).status.code(), Some(2));
    assert_eq!(drhp(&["rho", "--method", "det", "--theta", "1", "--points", "1,1"]).status.code(), Some(2));
    assert_eq!(drhp(&["verify", "resolvent", "--theta", "-1"]).status.code(), Some(2));
    assert_eq!(drhp(&["accept", "0"]).status.code(), Some(2));
}

#[test]
fn kernel_eval_emits_csv() {
    let out = drhp(&["kernel", "eval", "--family", "bessel", "--theta", "1", "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x2,y2,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 16);
    // K(1/2, 1/2) at θ = 1 is a probability strictly inside (0, 1)
    let v: f64 = rows.iter().find(|r| r.starts_with("1,1,")).unwrap().split(',').nth(2).unwrap().parse().unwrap();
    assert!(v > 0.0 && v < 1.0);
}

#[test]
fn negative_control_exits_one() {
    let out = drhp(&["limits", "f2w", "--a", "0.2", "--b", "0.5", "--flip-kappa"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["pass"], false);
}

#[test]
fn config_file_sets_seed_and_format() {
    let dir = std::env::temp_dir().join(format!("drhp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.toml");
    let report = dir.join("out.csv");
    std::fs::write(&cfg, format!("seed = 7\nformat = \"csv\"\noutput = {:?}\n", report.to_str().unwrap())).unwrap();
    let out = drhp(&["--config", cfg.to_str().unwrap(), "sample", "--theta", "2", "--n", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let from_file = std::fs::read_to_string(&report).unwrap();
    let direct = drhp(&["--seed", "7", "--format", "csv", "sample", "--theta", "2", "--n", "20"]);
    assert_eq!(from_file.as_bytes(), direct.stdout.as_slice());

    std::fs::write(&cfg, "sed = 7\n").unwrap();
    assert_eq!(drhp(&["--config", cfg.to_str().unwrap(), "sample", "--theta", "2", "--n", "1"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn precision_environment_variable_is_validated() {
    let bad = Command::new(env!("CARGO_BIN_EXE_drhp"))
        .args(["sample", "--theta", "1", "--n", "1"])
        .env("DRHP_TARGET_REL_ERROR", "0.5")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let good = Command::new(env!("CARGO_BIN_EXE_drhp"))
        .args(["verify", "resolvent", "--theta", "1", "--nmax", "20"])
        .env("DRHP_TARGET_REL_ERROR", "1e-10")
        .output()
        .unwrap();
    assert_eq!(good.status.code(), Some(0));
}

#[test]
fn drhp_subcommands_pass() {
    for args in [
        &["drhp", "verify", "--family", "bessel", "--theta", "1"][..],
        &["drhp", "verify", "--family", "hypergeometric", "--z", "0.4", "--z-prime", "0.6", "--xi", "0.3"][..],
        &["drhp", "solve", "--theta", "1", "--nmax", "30"][..],
    ] {
        let out = drhp(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn limits_emit_scale_error_csv() {
    let out = drhp(&["limits", "degenerate", "--theta", "1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert_eq!(text.lines().next(), Some("scale,error"));
}

#[test]
fn window_too_small_is_a_computation_error() {
    let out = drhp(&["verify", "resolvent", "--theta", "1", "--nmax", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("window too small"));
}

#[test]
fn accept_lists_its_steps() {
    let out = drhp(&["accept", "6", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "criterion,step,pass\n6,\"drhp solve\",true\n");
}

#[test]
fn rho_compare_without_monte_carlo() {
    let out = drhp(&["rho", "compare", "--theta", "0.5", "--queries", "1;-1,1", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r["mc"].is_null() && r["exact_ok"] == true));
}
