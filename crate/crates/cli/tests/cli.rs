use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reflectode"))
        .args(args)
        .env_remove("REFLECTODE_TOL")
        .output()
        .expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_reflectode"))
        .args(args)
        .env_remove("REFLECTODE_TOL")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).unwrap()
}

fn error_object(out: &Output) -> Value {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    assert_eq!(text.trim_end().lines().count(), 1, "{text}");
    serde_json::from_str(text.trim_end()).unwrap()
}

fn csv(out: &Output) -> (String, Vec<Vec<f64>>) {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(out);
    let mut lines = text.lines();
    let header = lines.next().unwrap().to_string();
    let rows = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn classify_reports_regime_and_degenerate_set() {
    let v = json(&run(&["classify", "--a", "-5", "--b", "4"]));
    assert_eq!(v["case"], "C1");
    assert_eq!(v["omega"], 3.0);
    assert_eq!(v["degenerate_t0"]["kind"], "progression");
    let spacing = v["degenerate_t0"]["spacing"].as_f64().unwrap();
    assert!((spacing - std::f64::consts::PI / 3.0).abs() < 1e-15);
    assert!(v["thresholds"]["eta"].is_number());
}

#[test]
fn solve_bump_vanishes_at_three_halves() {
    let (header, rows) = csv(&run(&["solve", "--a", "1", "--b", "1", "--t0", "0", "--c", "0", "--h", "bump(1)", "--eval", "1.5"]));
    assert_eq!(header, "t,u");
    assert_eq!(rows[0][0], 1.5);
    assert!(rows[0][1].abs() < 1e-8, "{}", rows[0][1]);
}

#[test]
fn region_reports_unbounded_strip() {
    let v = json(&run(&["region", "--a", "1", "--b", "-2"]));
    assert_eq!(v["strip"]["interval"][0], 0.0);
    assert_eq!(v["strip"]["interval"][1], "inf");
    assert_eq!(v["strip"]["sign"], "nonnegative");
}

#[test]
fn nonunique_exits_with_two() {
    let out = run(&["solve", "--a", "1", "--b", "1", "--t0", "0.5", "--h", "cos(t)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(error_object(&out)["error"], "nonunique-problem");
}

#[test]
fn other_errors_exit_with_one() {
    for args in [
        &["solve", "--a", "1"][..],
        &["solve", "--a", "1", "--b", "2", "--h", "cos("][..],
        &["solve", "--a", "1", "--b", "2", "--h", "foo(t)"][..],
        &["frobnicate"][..],
        &["classify", "--a", "x", "--b", "1"][..],
        &["nsolve", "--a-coeffs", "0,0,0", "--b-coeffs", "1,2,1", "--h", "t"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        let err = error_object(&out);
        assert!(err["error"].is_string() && err["message"].is_string(), "{err}");
    }
}

#[test]
fn green_grid_csv() {
    let (header, rows) = csv(&run(&["green", "--a", "1", "--b", "2", "--window", "-1,1", "--n", "5"]));
    assert_eq!(header, "t,s,G");
    assert_eq!(rows.len(), 25);
    let origin = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert_eq!(origin[2], 1.0);
}

#[test]
fn output_is_deterministic() {
    let args = ["solve", "--a", "-5", "--b", "4", "--h", "cos(3*t)^2", "--n", "41"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn csv_values_round_trip_exactly() {
    let out = run(&["solve", "--a", "1", "--b", "2", "--h", "exp(t)", "--t0", "1", "--c", "1.1752011936438014", "--eval", "0.3"]);
    let text = stdout(&out);
    let field = text.lines().nth(1).unwrap().split(',').nth(1).unwrap();
    let value: f64 = field.parse().unwrap();
    assert_eq!(format!("{value:?}"), field);
    assert!((value - 0.3f64.sinh()).abs() < 1e-12);
}

#[test]
fn problem_file_from_stdin_with_flag_override() {
    let file = r#"{"a": 1, "b": 2, "t0": 1, "c": 1.1752011936438014, "h": "exp(t)", "window": [-1, 1]}"#;
    let (_, rows) = csv(&run_stdin(&["solve", "--file", "-", "--n", "3"], file));
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), vec![-1.0, 0.0, 1.0]);
    assert!((rows[0][1] + 1f64.sinh()).abs() < 1e-12);

    // c overridden on the command line: u = sinh t + λ ũ with a different λ
    let (_, rows) = csv(&run_stdin(&["solve", "--file", "-", "--c", "0", "--eval", "1"], file));
    assert!(rows[0][1].abs() < 1e-12);
}

#[test]
fn malformed_problem_file_is_rejected() {
    let out = run_stdin(&["solve", "--file", "-"], r#"{"a": 1, "bee": 2}"#);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_object(&out)["error"], "invalid-input");
}

#[test]
fn sidecar_holds_lambda_and_case() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sidecar.json");
    let out = run(&[
        "solve", "--a", "1", "--b", "2", "--h", "exp(t)", "--t0", "1", "--c", "1.1752011936438014", "--eval", "0",
        "--sidecar", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["case"], "C2");
    assert!(v["lambda"].as_f64().unwrap().abs() < 1e-12);
    assert!(v["ubar_t0"].is_number());
}

#[test]
fn closed_form_matches_green_route() {
    let base = ["solve", "--a", "0.7", "--b", "0.7", "--h", "cos(t)", "--t0", "0.3", "--c", "1", "--n", "21"];
    let (_, green) = csv(&run(&base));
    let mut args = base.to_vec();
    args.extend(["--method", "closed-form"]);
    let (_, closed) = csv(&run(&args));
    for (g, c) in green.iter().zip(&closed) {
        assert!((g[1] - c[1]).abs() < 1e-8, "{g:?} {c:?}");
    }
}

#[test]
fn validate_passes_on_smooth_problem() {
    let v = json(&run(&["validate", "--a", "1", "--b", "2", "--h", "exp(t)", "--t0", "0.2", "--c", "1"]));
    assert_eq!(v["pass"], true);
    assert!(v["sup_error"].as_f64().unwrap() < 1e-5);
}

#[test]
fn nsolve_first_order_matches_solve() {
    let common = ["--a", "1", "--b", "2", "--h", "exp(t)", "--t0", "0.4", "--c", "2", "--eval", "-1,0.5"];
    let (_, n) = csv(&run(&[&["nsolve"][..], &common].concat()));
    let (_, s) = csv(&run(&[&["solve"][..], &common].concat()));
    for (x, y) in n.iter().zip(&s) {
        assert!((x[1] - y[1]).abs() < 2e-8, "{x:?} {y:?}");
    }
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_reflectode"))
        .args(["solve", "--a", "1", "--b", "2", "--h", "exp(t)", "--eval", "1"])
        .env("REFLECTODE_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(error_object(&out)["message"].as_str().unwrap().contains("tolerance"));
}
