use std::process::Command;

use serde_json::Value;
use spectral_duality_cli::{run, Outcome};

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("specdual").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = cli(&full);
    let text = if out.stdout.is_empty() { &out.stderr } else { &out.stdout };
    (out.code, serde_json::from_str(text).expect("valid JSON"))
}

/// Renders a JSON polynomial term list as `(exponents, num/den)` strings.
fn terms(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|t| {
            let e: Vec<String> = t["exps"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
            format!("{}:{}/{}", e.join(","), t["num"].as_str().unwrap(), t["den"].as_str().unwrap())
        })
        .collect()
}

#[test]
fn dual_check_example() {
    let out = cli(&["dual-check", "--p", "D^2+s+1", "--q", "D^3-2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("duality holds: true"));
    assert!(out.stdout.contains("X_QP: y^2 + y - x^3 + 3*x^2 - 3*x + 1\n"));
    assert!(out.stdout.contains("X_PQ swapped: -y^2 - y + x^3 - 3*x^2 + 3*x - 1"));

    let (code, v) = json(&["dual-check", "--p", "D^2+s+1", "--q", "D^3-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], Value::Bool(true));
    assert_eq!(v["X_QP"]["rank"], 2);
    assert_eq!(
        terms(&v["X_QP"]["raw"]),
        ["0,2:1/1", "0,1:1/1", "3,0:-1/1", "2,0:3/1", "1,0:-3/1", "0,0:1/1"]
    );
}

#[test]
fn mqp_json() {
    let (code, v) = json(&["mqp", "--p", "3", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rank"], 3);
    assert_eq!(v["variable"], "u");
    let cells: Vec<Vec<Vec<String>>> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(terms).collect())
        .collect();
    let u = vec!["1:1/1".to_string()];
    let one = vec!["0:1/1".to_string()];
    let z: Vec<String> = vec![];
    assert_eq!(cells, vec![vec![z.clone(), u.clone(), z.clone()], vec![z.clone(), z.clone(), u], vec![one, z.clone(), z]]);
}

#[test]
fn rank_one_curve() {
    let out = cli(&["curve", "--action", "D", "--op", "D"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("curve: y - x\n"), "{}", out.stdout);
}

#[test]
fn matrix_golden() {
    let out = cli(&["matrix", "--action", "D^2 + s + 1", "--op", "D^3 - 2"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "[    -1, u^2 - 2*u + 1 ]\n[ u - 1,             0 ]\n");
    let out = cli(&["matrix", "--action", "L + L^-1", "--op", "L^2", "--window-start", "0"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
}

#[test]
fn quantization_verdicts() {
    let base = ["--p0", "D^2 - 2*D + 1", "--q0", "D", "--p1", "D^2 - s", "--q1", "D + 1"];
    let mut args = vec!["quantize-check"];
    args.extend_from_slice(&base);
    let out = cli(&args);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("quantization: true\n"));

    let fourier = ["quantize-check", "--p0", "-D", "--q0", "D^2 - 2*D + 1", "--p1", "-D - 1", "--q1", "D^2 - s"];
    let out = cli(&fourier);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("matrices equal: false"));
    let mut spectral = fourier.to_vec();
    spectral.push("--spectral");
    assert_eq!(cli(&spectral).code, 0);
}

#[test]
fn fourier_check() {
    let out = cli(&["fourier-check", "--p1", "D^2 - s", "--q1", "D + 1"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("Fourier identity holds: true"));
}

#[test]
fn beh_command() {
    let out = cli(&["beh", "--gamma", "1", "--a", "1,1", "--b", "1,1", "--N", "1"]);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("duality holds: true"));
    let (code, v) = json(&["beh", "--gamma", "2", "--a", "-1,3/2,1", "--b", "0,-2", "--N", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["instance"]["N"], 3);
    assert_eq!(v["report"]["D1_matches_matrix_rep"], true);
    assert!(v["instance"]["charpoly_D1"].is_array());
    let bad = cli(&["beh", "--gamma", "1", "--a", "1,0", "--b", "1,1"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("a_{d2}"));
}

#[test]
fn resultant_command() {
    let out = cli(&["resultant", "--p", "L^2", "--q", "L^3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("resultant: y^2 - x^3\n"), "{}", out.stdout);
    let out = cli(&["resultant", "--p", "L^-1 + 1 + L", "--q", "L + 1 + L^-1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(cli(&["resultant", "--p", "3", "--q", "L"]).code, 2);
}

#[test]
fn parse_errors_exit_2_with_offset() {
    let out = cli(&["curve", "--action", "D^-1", "--op", "D"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("byte 2"), "{}", out.stderr);
    let (code, v) = json(&["dual-check", "--p", "D + L", "--q", "D"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "parse");
    assert_eq!(v["offset"], 4);
    let (code, v) = json(&["curve", "--action", "D +", "--op", "D"]);
    assert_eq!(code, 2);
    assert!(v["expected"].as_array().unwrap().iter().any(|e| e == "'('"));
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(cli(&["curve", "--action", "s*D", "--op", "D"]).code, 2);
    assert_eq!(cli(&["curve", "--action", "L^2 + 1", "--op", "L"]).code, 2);
    assert_eq!(cli(&["mqp", "--p", "0", "--q", "2"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["mqp", "--p", "two", "--q", "2"]).code, 2);
    assert_eq!(cli(&["property-suite", "--suite", "nope"]).code, 2);
}

#[test]
fn help_exits_zero() {
    let out = cli(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("property-suite"));
}

#[test]
fn property_suite_is_deterministic() {
    let args = ["--seed", "42", "property-suite", "--count", "4"];
    let a = cli(&args);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert!(a.stdout.starts_with("seed 42\n"));
    assert!(a.stdout.contains("laurent-duality: 4/4 passed"));
    assert_eq!(a, cli(&args));
    let (code, v) = json(&["property-suite", "--count", "3", "--suite", "beh", "--suite", "z-action"]);
    assert_eq!(code, 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
    assert_eq!(v["ok"], true);
}

#[test]
fn identical_argv_gives_identical_output() {
    let args = ["--json", "dual-check", "--p", "L^-1 + 2 + L", "--q", "L - 1 + 3*L^-2"];
    assert_eq!(cli(&args), cli(&args));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_specdual");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["curve", "--action", "D", "--op", "D"]), Some(0));
    assert_eq!(
        status(&["quantize-check", "--p0", "D^2", "--q0", "D^3", "--p1", "D^2", "--q1", "D^3"]),
        Some(1)
    );
    assert_eq!(status(&["curve", "--action", "sD", "--op", "D"]), Some(2));
}
