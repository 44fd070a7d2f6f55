use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nda-riccati"))
}

fn run(dir: &Path, args: &[&str]) -> (i32, Value, String) {
    let Output { status, stdout, stderr } = bin().current_dir(dir).args(args).output().unwrap();
    let json = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
    (status.code().unwrap(), json, String::from_utf8_lossy(&stderr).into_owned())
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn setup() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let c = |v: &str| format!(r#"{{"type": "const", "params": {{"value": {v}}}}}"#);
    write(dir.path(), "tan.json", &format!(r#"{{"algebra": "R", "b_minus": {}, "b_plus": {}}}"#, c("[1]"), c("[1]")));
    write(
        dir.path(),
        "quat.json",
        &format!(
            r#"{{"algebra": "H", "b_minus": {}, "b_0L": {}, "b_plus": {}}}"#,
            c("[2, 0, 0, 0]"),
            c("[0, 0.3, 0, 0]"),
            c("[0, 0, 0.3, 0]")
        ),
    );
    write(
        dir.path(),
        "oct.json",
        &format!(
            r#"{{"algebra": "O", "b_minus": {}, "b_0L": {}, "b_0R": {}, "b_plus": {}}}"#,
            c("[0.1, 0.2, 0, -0.1, 0, 0.3, 0, 0.1]"),
            c("[0.2, 0.3, -0.2, 0, 0.1, 0, 0.2, 0]"),
            c("[-0.1, 0, 0.2, 0.1, 0, -0.3, 0, 0.2]"),
            c("[0.1, 0, 0.1, 0, -0.2, 0, 0.1, 0.3]")
        ),
    );
    write(dir.path(), "pot.json", &format!(r#"{{"hbar": 1, "m": 1, "V": {}}}"#, c("[0.245]")));
    dir
}

#[test]
fn integrate_tangent() {
    let dir = setup();
    let (code, v, _) = run(dir.path(), &["integrate", "--spec", "tan.json", "--t1", "1", "--step", "1e-3", "--out", "t.csv"]);
    assert_eq!(code, 0);
    assert!((v["final"][0].as_f64().unwrap() - 1.5574077).abs() < 1e-7);
    assert_eq!(v["config"]["step"], 0.001);
    assert_eq!(v["spec"]["algebra"], "R");
    let csv = std::fs::read_to_string(dir.path().join("t.csv")).unwrap();
    assert!(csv.starts_with("t,x_0\n0e0,0e0\n"));
    assert_eq!(csv.lines().count(), 1002);
}

#[test]
fn blow_up_sets_exit_code() {
    let dir = setup();
    let (code, v, _) = run(dir.path(), &["integrate", "--spec", "tan.json", "--t1", "2"]);
    assert_eq!(code, 3);
    assert_eq!(v["blew_up"], true);
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = setup();
    write(dir.path(), "bad.json", r#"{"algebra": "R", "b_minus": {"type": "const", "params": {"value": [1]}}, "extra": 1}"#);
    for args in [
        &["integrate", "--spec", "bad.json"][..],
        &["integrate", "--spec", "missing.json"],
        &["integrate", "--spec", "tan.json", "--x0", "1,2"],
        &["integrate", "--spec", "tan.json", "--step", "0"],
        &["integrate", "--spec", "tan.json", "--t0", "1", "--t1", "0"],
        &["laws", "--algebra", "X"],
        &["laws", "--exact", "--float"],
        &["closure", "--generators", "nope"],
        &["symplectic", "--algebra", "R"],
        &["superposition", "--spec", "quat.json"],
        &["frobnicate"],
    ] {
        let (code, _, err) = run(dir.path(), args);
        assert_eq!(code, 1, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, _, _) = run(dir.path(), &["--help"]);
    assert_eq!(code, 0);
}

#[test]
fn laws_reports() {
    let dir = setup();
    let (code, v, _) = run(dir.path(), &["laws", "--algebra", "O", "--samples", "500", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "ok");
    assert!(v["associator"].as_f64().unwrap() > 0.0);
    let (_, h, _) = run(dir.path(), &["laws", "--algebra", "H"]);
    assert_eq!(h["associator"], 0.0);
    let (code, f, _) = run(dir.path(), &["laws", "--algebra", "O", "--float", "--samples", "500"]);
    assert_eq!(code, 0);
    assert_eq!(f["exact"], false);
}

#[test]
fn closure_reports() {
    let dir = setup();
    let (code, v, _) = run(dir.path(), &["closure", "--algebra", "O", "--generators", "riccati"]);
    assert_eq!(code, 0);
    assert_eq!(v["dimension"], 45);
    assert_eq!(v["closed"], true);
    let (_, r, _) = run(dir.path(), &["closure", "--algebra", "O", "--generators", "rotations"]);
    assert_eq!(r["dimension"], 28);
    let (_, a, _) = run(dir.path(), &["closure", "--algebra", "H", "--generators", "alt-right", "--degree-cap", "4"]);
    assert_eq!(a["closed"], false);
    assert_eq!(a["config"]["degree_cap"], 4);
}

#[test]
fn conformal_check() {
    let dir = setup();
    let (code, v, _) = run(dir.path(), &["conformal", "--spec", "quat.json", "--check", "1000"]);
    assert_eq!(code, 0);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-12);
    let (code, e, _) = run(dir.path(), &["conformal", "--spec", "oct.json", "--check", "200", "--exact"]);
    assert_eq!(code, 0);
    assert_eq!(e["max_residual"], 0.0);
}

#[test]
fn superposition_tolerance() {
    let dir = setup();
    let (code, v, _) = run(dir.path(), &["superposition", "--spec", "tan.json", "--x0", "-0.5,0,0.3", "--k", "0.7"]);
    assert_eq!(code, 0);
    assert!(v["max_error"].as_f64().unwrap() < 1e-6);
    let (code, _, _) = run(dir.path(), &["superposition", "--spec", "tan.json", "--tol", "1e-20"]);
    assert_eq!(code, 2);
}

#[test]
fn lift_comparison() {
    let dir = setup();
    let (code, v, _) =
        run(dir.path(), &["lift", "--spec", "quat.json", "--x0", "0.3,0.4,0,-0.2", "--compare", "--out", "p.csv"]);
    assert_eq!(code, 0);
    assert!(v["comparison"]["max_deviation"].as_f64().unwrap() < 1e-5);
    assert!(v["chart_switches"].as_u64().unwrap() >= 1);
    assert!(v["max_switch_gap"].as_f64().unwrap() < 1e-10);
    let csv = std::fs::read_to_string(dir.path().join("p.csv")).unwrap();
    assert!(csv.starts_with("t,chart,w_0,w_1,w_2,w_3\n"));
    assert!(csv.contains(",D1,"));

    // non-real diagonal octonion coefficients need the explicit general mode
    let (code, _, err) = run(dir.path(), &["lift", "--spec", "oct.json", "--compare"]);
    assert_eq!(code, 1);
    assert!(err.contains("real"));
    let (code, g, _) = run(dir.path(), &["lift", "--spec", "oct.json", "--compare", "--general"]);
    assert_eq!(code, 0);
    assert!(g["comparison"]["max_deviation"].as_f64().unwrap() < 1e-5);
}

#[test]
fn symplectic_suite() {
    let dir = setup();
    for alg in ["O", "H"] {
        let (code, v, _) = run(dir.path(), &["symplectic", "--algebra", alg]);
        assert_eq!(code, 0);
        assert_eq!(v["status"], "ok");
        assert_eq!(v["hamiltonians"][0]["hamiltonian"], "-rho^-1");
        assert_eq!(v["constant_form_witness"]["with_euler_dim"], 0);
        for check in v["lie_derivative"].as_array().unwrap() {
            assert_eq!(check["status"], "ok");
            assert_eq!(check["residual"], 0.0);
        }
    }
}

#[test]
fn schrodinger_run() {
    let dir = setup();
    let (code, v, _) = run(dir.path(), &["schrodinger", "--spec", "pot.json", "--u0", "0.7,0,0,0", "--out", "w.csv"]);
    assert_eq!(code, 0);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["minimal_algebra_dimension"], 15);
    let csv = std::fs::read_to_string(dir.path().join("w.csv")).unwrap();
    assert!(csv.starts_with("x,u_0,u_1,u_2,u_3,psi_0,psi_1,psi_2,psi_3,residual\n"));
    write(dir.path(), "e.json", r#"{"E": 1}"#);
    let (code, _, _) = run(dir.path(), &["schrodinger", "--spec", "e.json"]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    let dir = setup();
    let args = ["conformal", "--spec", "quat.json", "--check", "300", "--seed", "9"];
    let a = bin().current_dir(dir.path()).args(args).output().unwrap().stdout;
    let b = bin().current_dir(dir.path()).args(args).output().unwrap().stdout;
    assert_eq!(a, b);
    let (_, v, _) = run(dir.path(), &args);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["command"], "conformal");
}
