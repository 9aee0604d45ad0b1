//! End-to-end tests of the `bellviol` binary: command behaviour, exit
//! codes, and byte-stable JSON output.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};
use std::io::Write;
use std::process::{Command, Output};

use bellviol::{ghz_state, Sign, SignPattern};

fn bellviol_cmd(args: &[&str]) -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bellviol"));
    cmd.args(args);
    cmd.env_remove("BELLVIOL_SEED");
    cmd
}

fn run(args: &[&str]) -> Output {
    bellviol_cmd(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("bellviol-test-{}-{name}", std::process::id()));
    let mut f = std::fs::File::create(&path).expect("temp file");
    f.write_all(contents.as_bytes()).expect("write");
    path
}

#[test]
fn spectrum_right_angles_reports_violation() {
    let out = run(&["spectrum", "--n", "3"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    assert_eq!(v["n"], 3);
    assert_eq!(v["violation"], true);
    assert!((v["max_abs_eigenvalue"].as_f64().unwrap() - 4.0).abs() < 1e-9);
    assert!((v["analytic_max_abs"].as_f64().unwrap() - 4.0).abs() < 1e-12);
}

#[test]
fn spectrum_zero_angles_reports_no_violation() {
    let out = run(&["spectrum", "--n", "3", "0", "0", "0"]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    assert_eq!(v["violation"], false);
    for mode in v["modes"].as_array().unwrap() {
        assert_eq!(mode["violation"], false);
        assert!(mode["eigenvalue"].as_f64().unwrap().abs() <= 2.0 + 1e-9);
    }
}

#[test]
fn spectrum_worked_example_from_file() {
    let path = write_temp(
        "worked.json",
        &format!(
            "{{\"n\":3,\"phi\":[0,0,0],\"phi_prime\":[{},{},{}]}}",
            FRAC_PI_2, FRAC_PI_2, FRAC_PI_4
        ),
    );
    let out = run(&["spectrum", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    let expected = 2.0 * (2.0 + SQRT_2).sqrt();
    assert!((v["max_abs_eigenvalue"].as_f64().unwrap() - expected).abs() < 1e-9);
    std::fs::remove_file(path).ok();
}

#[test]
fn spectrum_json_round_trips_byte_identically() {
    let out = run(&["spectrum", "--n", "4", "0.3", "1.1", "0.7", "2.0"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let v: serde_json::Value = serde_json::from_str(text.trim_end()).expect("json");
    let re_emitted = serde_json::to_string(&v).expect("serialize");
    assert_eq!(re_emitted, text.trim_end());
}

#[test]
fn spectrum_degrees_flag_converts() {
    let radians = run(&["spectrum", "--n", "3"]);
    let degrees = run(&["spectrum", "--n", "3", "90", "90", "90", "--degrees"]);
    let a: serde_json::Value = serde_json::from_str(&stdout_str(&radians)).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout_str(&degrees)).unwrap();
    let ma = a["max_abs_eigenvalue"].as_f64().unwrap();
    let mb = b["max_abs_eigenvalue"].as_f64().unwrap();
    assert!((ma - mb).abs() < 1e-12);
}

#[test]
fn spectrum_rejects_malformed_input() {
    // wrong angle count inline
    let out = run(&["spectrum", "--n", "3", "0.1", "0.2"]);
    assert_eq!(exit_code(&out), 2);

    // missing angle in the settings file
    let path = write_temp(
        "short.json",
        "{\"n\":3,\"phi\":[0,0],\"phi_prime\":[1.0,1.0,1.0]}",
    );
    let out = run(&["spectrum", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(path).ok();

    // invalid sign product
    let path = write_temp(
        "signs.json",
        "{\"n\":3,\"phi\":[0,0,0],\"phi_prime\":[1,1,1],\"signs\":[1,1,1,1]}",
    );
    let out = run(&["spectrum", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(path).ok();

    // unknown field
    let path = write_temp(
        "junk.json",
        "{\"n\":3,\"phi\":[0,0,0],\"phi_prime\":[1,1,1],\"extra\":1}",
    );
    let out = run(&["spectrum", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_default_passes_all_checks() {
    let out = run(&["verify", "--seed", "5"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    for name in [
        "lhv_bound",
        "lhv_sign_constraint",
        "ghz_theorem",
        "eq9_extremum",
        "cosine_identity",
        "spectral_crosscheck",
    ] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_only_filter() {
    let out = run(&["verify", "--only", "ghz", "--seed", "5"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    assert!(text.contains("ghz_theorem"));
    assert!(!text.contains("lhv_bound"));

    let out = run(&["verify", "--only", "nonsense"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn verify_json_output() {
    let out = run(&["verify", "--only", "identity", "--seed", "5", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let v: serde_json::Value = serde_json::from_str(&text).expect("json");
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["name"], "cosine_identity");
    assert_eq!(arr[0]["pass"], true);
    assert_eq!(serde_json::to_string(&v).unwrap(), text.trim_end());
}

#[test]
fn verify_impossible_tolerance_fails() {
    let out = run(&["verify", "--only", "ghz", "--seed", "5", "--tol", "1e-30"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout_str(&out).contains("FAIL"));
}

#[test]
fn nonpositive_tolerance_is_a_usage_error() {
    let out = run(&["verify", "--only", "ghz", "--tol", "-1e-9"]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["spectrum", "--n", "3", "--tol", "0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn optimize_reaches_target_and_is_deterministic() {
    let a = run(&["optimize", "--n", "3", "--seed", "7"]);
    assert_eq!(exit_code(&a), 0);
    let b = run(&["optimize", "--n", "3", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);

    let v: serde_json::Value = serde_json::from_str(&stdout_str(&a)).expect("json");
    assert!(v["value"].as_f64().unwrap() >= 4.0 - 1e-6);
    assert_eq!(v["reached_target"], true);
    assert!(v["max_magnitude_residual"].as_f64().unwrap() <= 1e-6);

    // emitted JSON round-trips byte-identically
    let text = stdout_str(&a);
    let re_emitted = serde_json::to_string(&v).expect("serialize");
    assert_eq!(re_emitted, text.trim_end());
}

#[test]
fn optimize_env_seed_fallback() {
    let mut cmd = bellviol_cmd(&["optimize", "--n", "3"]);
    cmd.env("BELLVIOL_SEED", "7");
    let via_env = cmd.output().expect("binary runs");
    let via_flag = run(&["optimize", "--n", "3", "--seed", "7"]);
    assert_eq!(via_env.stdout, via_flag.stdout);
}

#[test]
fn optimize_budget_exhaustion_exits_one() {
    let out = run(&["optimize", "--n", "3", "--seed", "3", "--budget", "1"]);
    assert_eq!(exit_code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    assert_eq!(v["reached_target"], false);
    assert!(v["value"].as_f64().unwrap() < 4.0 - 1e-6);
}

#[test]
fn optimize_rejects_unsupported_particle_count() {
    let out = run(&["optimize", "--n", "2"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn correlate_ghz_state_reaches_extremes() {
    let ghz = ghz_state(&SignPattern::all_plus(3), &[0.0; 3], Sign::Plus).unwrap();
    let path = write_temp("ghz.json", &ghz.to_json());

    let out = run(&[
        "correlate",
        "--input",
        path.to_str().unwrap(),
        "0",
        "0",
        "0",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    assert!((v["closed"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["difference"].as_f64().unwrap() < 1e-10);

    let half_pi = format!("{FRAC_PI_2}");
    let out = run(&[
        "correlate",
        "--input",
        path.to_str().unwrap(),
        &half_pi,
        &half_pi,
        "0",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).expect("json");
    assert!((v["closed"].as_f64().unwrap() + 1.0).abs() < 1e-12);
    std::fs::remove_file(path).ok();
}

#[test]
fn correlate_basis_state_is_zero() {
    let path = write_temp(
        "basis.json",
        "{\"n\":2,\"amplitudes\":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]]}",
    );
    let out = run(&[
        "correlate",
        "--input",
        path.to_str().unwrap(),
        "0.4",
        "-1.0",
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_str(&out).contains("closed     = 0.000000000000000"));
    std::fs::remove_file(path).ok();
}

#[test]
fn correlate_random_state_closed_matches_direct() {
    // fixed non-trivial normalized amplitudes with mixed phases
    let path = write_temp(
        "random.json",
        "{\"n\":2,\"amplitudes\":[[0.5,0.0],[0.0,0.5],[-0.5,0.0],[0.3,-0.4]]}",
    );
    let out = run(&[
        "correlate",
        "--input",
        path.to_str().unwrap(),
        "0.8",
        "-0.3",
        "--json",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    let v: serde_json::Value = serde_json::from_str(&text).expect("json");
    assert!(v["difference"].as_f64().unwrap() <= 1e-8);
    assert_eq!(serde_json::to_string(&v).unwrap(), text.trim_end());
    std::fs::remove_file(path).ok();
}

#[test]
fn correlate_rejects_malformed_state() {
    let path = write_temp("broken.json", "{\"n\":2,\"amplitudes\":[[1.0,0.0]]}");
    let out = run(&["correlate", "--input", path.to_str().unwrap(), "0", "0"]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(path).ok();

    // unnormalized amplitudes
    let path = write_temp(
        "unnorm.json",
        "{\"n\":1,\"amplitudes\":[[1.0,0.0],[1.0,0.0]]}",
    );
    let out = run(&["correlate", "--input", path.to_str().unwrap(), "0"]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(path).ok();

    // wrong angle count
    let ghz = ghz_state(&SignPattern::all_plus(2), &[0.0; 2], Sign::Plus).unwrap();
    let path = write_temp("ghz2.json", &ghz.to_json());
    let out = run(&["correlate", "--input", path.to_str().unwrap(), "0"]);
    assert_eq!(exit_code(&out), 2);
    std::fs::remove_file(path).ok();
}
