use std::process::{Command, Output};

use conestrat::orthopoly::simplex_basis;
use conestrat::polyalg::{parse_rational, Rational};
use conestrat::sbo::{pullback, sbo_apply, SboSpec};
use num_complex::Complex64;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conestrat")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

fn row(rows: &Value, index: u64) -> &Value {
    rows.as_array().unwrap().iter().find(|r| r["index"][0] == index).expect("row present")
}

#[test]
fn quad_interval_single_node() {
    let v = json(&run(&["quad", "interval", "--alpha", "0", "--beta", "0", "--n", "1"]));
    assert_eq!(v["domain"], "interval");
    assert!(v["nodes"][0][0].as_f64().unwrap().abs() < 1e-15);
    assert!((v["weights"][0].as_f64().unwrap() - 2.0).abs() < 1e-14);
}

#[test]
fn quad_ball_total_weight_is_beta_product() {
    // 2^{−p/2} ∫(1−|v|²)^{α−1/2} dv over the unit disc is π/(2α+1).
    let v = json(&run(&["quad", "ball", "--p", "2", "--alpha", "2", "--n", "40"]));
    let total = v["total_weight"].as_f64().unwrap();
    assert!((total - std::f64::consts::PI / 5.0).abs() <= 1e-12, "{total}");
    let sum: f64 = v["weights"].as_array().unwrap().iter().map(|w| w.as_f64().unwrap()).sum();
    assert!((sum - total).abs() < 1e-12);
    assert_eq!(v["npts"], 40);
}

#[test]
fn quad_half_line_csv_has_header_and_rows() {
    let out = run(&["quad", "half-line", "--a", "0.5", "--n", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x0,weight");
    assert_eq!(lines.len(), 6);
}

#[test]
fn table_jacobi_degree_one_row() {
    let rows = json(&run(&["table", "jacobi", "--alpha", "3", "--beta", "1/2", "--degree", "3"]));
    assert_eq!(rows.as_array().unwrap().len(), 4);
    // (α−β)/2 and (α+β+2)/2 at α = 3, β = 1/2.
    assert_eq!(strings(&row(&rows, 1)["coefficients"]), ["5/4", "11/4"]);
    for r in rows.as_array().unwrap() {
        assert!(!r["anchor"].as_str().unwrap().is_empty());
        assert_eq!(r["poly"]["nvars"], 1);
    }
}

#[test]
fn table_juhl_l2_alpha1() {
    let rows = json(&run(&["table", "juhl", "--alpha", "1", "--degree", "2"]));
    assert_eq!(strings(&row(&rows, 2)["coefficients"]), ["4", "-1"]);
}

#[test]
fn table_rankin_cohen_l1() {
    let (lp, lpp) = ("5/2", "7/3");
    let rows = json(&run(&["table", "rankin-cohen", "--lambda1", lp, "--lambda2", lpp, "--degree", "1"]));
    assert_eq!(strings(&row(&rows, 1)["coefficients"]), [lpp.to_string(), format!("-{lp}")]);
}

#[test]
fn table_simplex_rows_cover_all_multi_indices() {
    let rows = json(&run(&["table", "simplex", "--lambda", "1,1,1", "--degree", "2"]));
    // 1 + 2 + 3 multi-indices of length 2 with degree ≤ 2.
    assert_eq!(rows.as_array().unwrap().len(), 6);
    for r in rows.as_array().unwrap() {
        assert_eq!(r["family"], "simplex");
        assert_eq!(r["poly"]["nvars"], 2);
    }
}

#[test]
fn table_ball_csv_uses_exact_rationals() {
    let out = run(&["table", "ball", "--p", "2", "--alpha", "1/2", "--degree", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("family,index,anchor,exps,coefficient\n"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("ball,")));
    assert!(!text.contains('.'), "coefficients must be exact: {text}");
}

#[test]
fn table_rejects_bad_parameters() {
    assert_eq!(run(&["table", "jacobi", "--alpha", "x/2"]).status.code(), Some(2));
    assert_eq!(run(&["table", "simplex", "--lambda", "1"]).status.code(), Some(2));
    assert_eq!(run(&["table", "nope"]).status.code(), Some(2));
}

#[test]
fn transform_tensor_simplex_matches_library() {
    let lam = ["3/2", "2", "5/2"];
    let out = run(&[
        "transform",
        "tensor-simplex",
        "--n",
        "3",
        "--lambda",
        &lam.join(","),
        "--k",
        "1,1",
        "--monomial",
        "2,1,0",
        "--points",
        "0.3;1.2;2.5",
    ]);
    let v = json(&out);
    assert_eq!(v["geometry"], "tensor-simplex");
    assert_eq!(v["test_function"]["monomial"], serde_json::json!([2, 1, 0]));

    let lambda: Vec<Rational> = lam.iter().map(|s| parse_rational(s).unwrap()).collect();
    let spec = SboSpec::tensor(lambda.clone(), 2, simplex_basis(2, &lambda, &[1, 1]).unwrap()).unwrap();
    let f = |y: &[f64]| Complex64::new((-0.5 * y.iter().sum::<f64>()).exp() * y[0] * y[0] * y[1], 0.0);
    let points = vec![vec![0.3], vec![1.2], vec![2.5]];
    let expected = sbo_apply(&spec, pullback(&spec, f), &points, 12).unwrap();
    let values = v["values"].as_array().unwrap();
    assert_eq!(values.len(), 3);
    for (got, want) in values.iter().zip(&expected) {
        assert!(want.norm() > 1e-8);
        let got = Complex64::new(got[0].as_f64().unwrap(), got[1].as_f64().unwrap());
        assert!((got - want).norm() <= 1e-13 * want.norm(), "{got} vs {want}");
    }
}

#[test]
fn transform_rejects_wrong_point_dimension() {
    let out = run(&[
        "transform",
        "so-p",
        "--n",
        "6",
        "--p",
        "3",
        "--lambda",
        "13/2",
        "--l",
        "3",
        "--j",
        "1",
        "--points",
        "1,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "transform",
        "lorentz-ball",
        "--n",
        "5",
        "--p",
        "2",
        "--lambda",
        "11/2",
        "--k",
        "1",
        "--points",
        "2,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_bessel_eigen_is_exact() {
    let v = json(&run(&["verify", "--suite", "bessel-eigen"]));
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        assert_eq!(c["value"].as_f64(), Some(0.0), "{}", c["name"]);
        assert_eq!(c["pass"], true);
        assert_eq!(c["runtime_ms"], 0);
        assert!(!c["anchor"].as_str().unwrap().is_empty());
    }
    assert_eq!(v["version"], "1");
}

#[test]
fn verify_is_deterministic_for_a_fixed_seed() {
    let a = run(&["verify", "--suite", "all", "--seed", "7"]);
    let b = run(&["verify", "--suite", "all", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn verify_tight_tolerance_fails_and_names_check() {
    let out = run(&["verify", "--suite", "gamma", "--tol", "gamma.volume.n4.p1=1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("gamma.volume.n4.p1"), "{err}");
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["gamma.volume.n4.p1"]);
}

#[test]
fn verify_usage_errors_exit_2() {
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--tol", "missing-equals"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn verify_writes_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = run(&["verify", "--suite", "juhl", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("name,anchor,params,value,tolerance,pass,runtime_ms,gating\n"));
    assert!(text.lines().skip(1).all(|l| l.starts_with("juhl.")));
}
