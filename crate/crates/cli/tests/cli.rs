//! End-to-end tests of the `polar` binary: exit codes, JSON shape, and
//! output stability.

use serde_json::Value;
use std::process::{Command, Output};

fn polar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn polar_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polar"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn analyze_cyclic_surface_json() {
    let out = polar(&[
        "analyze", "--family", "cyclic", "--a", "2,3,5", "--b", "1,1,1", "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["invariants"]["chi"], 29);
    assert_eq!(v["invariants"]["zeta"]["factors"][0]["m"], 29);
    assert_eq!(v["invariants"]["zeta"]["factors"][0]["e"], -1);
    assert_eq!(v["invariants"]["middle_betti"], 28);
    assert_eq!(v["invariants"]["connectivity"], 1);
    assert_eq!(v["invariants"]["monodromy_order"], 29);
    assert_eq!(v["weights"]["polar"]["v"][0], "21/29");
    assert_eq!(v["weights"]["polar"]["m_p"], 29);
    assert_eq!(v["stratification"]["convenience"], 1);
}

#[test]
fn analyze_not_polar_weighted_exits_2() {
    let out = polar(&["analyze", "--poly", "z1^2*zbar1^2 + z2^2*zbar2^2"]);
    assert_eq!(code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("not polar weighted"), "{stderr}");
    assert!(stderr.contains("[0, 0]"), "inconsistent system shown: {stderr}");
}

#[test]
fn parse_and_usage_errors_exit_1() {
    assert_eq!(code(&polar(&["analyze", "--poly", "z1^^2"])), 1);
    assert_eq!(code(&polar(&["analyze", "--poly", "z0"])), 1);
    assert_eq!(code(&polar(&["analyze", "--family", "nope", "--a", "2"])), 1);
    assert_eq!(code(&polar(&["analyze"])), 1);
    assert_eq!(code(&polar(&["analyze", "--family", "cyclic", "--a", "2,3"])), 1);
    // clap-level usage failure
    assert_eq!(code(&polar(&["bogus-subcommand"])), 1);
}

#[test]
fn analyze_one_variable_power() {
    let out = polar(&["analyze", "--poly", "z1^2", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["invariants"]["chi"], 2);
    assert_eq!(v["invariants"]["zeta"]["text"], "(1-t^2)^-1");
}

#[test]
fn verify_family_passes() {
    let out = polar(&[
        "verify", "--family", "g1", "--a", "2,2,2", "--samples", "300", "--seed", "7",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("overall: pass"));
}

#[test]
fn verify_tight_tolerance_small_sample() {
    let out = polar(&[
        "verify", "--poly", "z1^2*zbar2+z2^3", "--tol", "1e-12", "--samples", "5",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn corrupted_weights_fail_verification() {
    let out = polar_env(
        &["verify", "--family", "g1", "--a", "2,2,2", "--samples", "50"],
        "POLAR_CORRUPT_WEIGHTS",
        "1",
    );
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_json_reports_checks() {
    let out = polar(&[
        "verify", "--family", "brieskorn", "--a", "3,2", "--samples", "100", "--json",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["pass"], true);
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"functional-equation"));
    assert!(names.contains(&"euler-identities"));
    assert!(names.contains(&"projection"));
    assert!(names.contains(&"monodromy"));
    assert!(names.contains(&"torus-diffeo"));
}

#[test]
fn isolated_verdicts() {
    let out = polar(&["isolated", "--family", "g1", "--a", "1,2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("non-isolated"), "{text}");
    assert!(text.contains("singular family"), "locus description: {text}");

    let out = polar(&["isolated", "--family", "g2", "--a", "2,3"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verdict: isolated"), "{text}");

    let out = polar(&[
        "isolated", "--family", "sigma", "--perm", "(1 2)(3 4)", "--a", "2,2,2,2",
    ]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("verdict: isolated"), "{text}");

    let out = polar(&[
        "isolated", "--family", "sigma", "--perm", "(1 2)(3 4)", "--a", "1,2,1,2", "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["isolated"], false);
    assert_eq!(v["cycles"][0]["isolated"], false);

    // isolated needs a family, not a bare polynomial
    assert_eq!(code(&polar(&["isolated", "--poly", "z1^2"])), 1);
}

#[test]
fn strata_and_zeta_subcommands() {
    let out = polar(&["strata", "--family", "brieskorn", "--a", "3,2"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("convenience: k = 1"), "{text}");

    let out = polar(&["zeta", "--family", "brieskorn", "--a", "3,2", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["chi"], -1);
    assert_eq!(v["zeta"]["text"], "(1-t^2)^-1 (1-t^3)^-1 (1-t^6)^1");
    assert_eq!(v["divisor"]["text"], "-L2 - L3 + L6");
}

#[test]
fn json_output_is_stable_across_runs() {
    let args = [
        "analyze", "--family", "g2", "--a", "2,3", "--verify", "--samples", "50", "--seed",
        "42", "--json",
    ];
    let first = polar(&args);
    let second = polar(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, second.stdout);
}
