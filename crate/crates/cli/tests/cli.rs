use serde_json::Value;
use std::process::{Command, Output};

fn glspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glspace")).args(args).env_remove("GLSPACE_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn norm_json_has_report_fields() {
    let o = glspace(&["norm", "--source", "torus:cos:1", "--psi", "exp:0.5", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["value", "argmax_p", "stability", "errors"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    // sup_p |cos|_p / sqrt(p) is approached as p -> 1, where |cos|_1 = 2/pi.
    let value = v["value"].as_f64().unwrap();
    assert!((value - 2.0 / std::f64::consts::PI).abs() < 1e-3, "{value}");
}

#[test]
fn hilbert_ratio_is_one_at_two() {
    let o = glspace(&["op", "--kind", "hilbert", "--source", "torus:trig:0 1 0.5;0.2", "--p-grid", "2", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let r = v["rows"][0]["ratio"].as_f64().unwrap();
    assert!((r - 1.0).abs() < 1e-12, "{r}");
}

#[test]
fn op_keeps_divergent_rows() {
    let o = glspace(&["op", "--kind", "ugamma", "--source", "torus:cos:1", "--gamma", "0.5", "--p-grid", "1.5,4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("p,op_norm,source_norm,ratio\n"));
    assert!(out.lines().nth(2).unwrap().starts_with("4,divergent,"), "{out}");
}

#[test]
fn conjugate_csv_columns() {
    let o = glspace(&["conjugate", "--psi", "exp:0.5", "--u", "10,100"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("u,N,ln_N,argmax_p"));
    assert_eq!(lines.count(), 2);
}

#[test]
fn passing_check_exits_zero() {
    let o = glspace(&["check", "--ineq", "kaczmarz", "--corpus", "trig-small", "--tol", "1e-6", "--csv"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("check_id,p,lhs,rhs,ratio,pass\n"));
}

#[test]
fn bad_specs_exit_two() {
    assert_eq!(glspace(&["suite", "--name", "bogus"]).status.code(), Some(2));
    assert_eq!(glspace(&["norm", "--source", "torus:nope", "--psi", "exp:0.5"]).status.code(), Some(2));
    assert_eq!(glspace(&["suite", "--name", "norms", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(glspace(&["op", "--kind", "sM", "--source", "line:gaussian"]).status.code(), Some(2));
}

#[test]
fn empty_suite_passes_with_warning() {
    let o = glspace(&["suite", "--name", "operators", "--checks", ""]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn suite_reports_are_byte_identical() {
    let args = ["suite", "--name", "operators", "--checks", "pichorides,riesz,kaczmarz"];
    let one = glspace(&[&args[..], &["--threads", "1"]].concat());
    let many = glspace(&[&args[..], &["--threads", "4"]].concat());
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn budget_variable_reaches_the_report() {
    let o = Command::new(env!("CARGO_BIN_EXE_glspace"))
        .args(["suite", "--name", "sharpness", "--checks", "leindler_attainment"])
        .env("GLSPACE_BUDGET", "2000")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["metadata"]["budget"], "2000");
    assert!(v["records"][0]["check_id"].as_str().unwrap().contains("N=2000"));
}

#[test]
fn tail_bound_dominates_tail() {
    let o = glspace(&["tail", "--source", "seq:power_log:L=2,q=0", "--u", "0.05,0.1,0.3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("u,T,bound"));
    for l in lines {
        let v: Vec<f64> = l.split(',').map(|c| c.parse().unwrap()).collect();
        assert!(v[2] >= v[1], "{l}");
    }
}
