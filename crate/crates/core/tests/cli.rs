use std::process::{Command, Output};

use serde_json::Value;

fn sepscope(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepscope"))
        .args(args)
        .env_remove("SEPSCOPE_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json output")
}

#[test]
fn analyze_ghz_reports_ppt_witness() {
    let o = sepscope(&["analyze", "--state", "ghz:1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["overall"], "entangled");
    let ppt = &v["verdicts"][0];
    assert_eq!(ppt["criterion"], "ppt");
    assert_eq!(ppt["witness"]["eigenvalue"], -0.5);
}

#[test]
fn analyze_noisy_ghz_is_certified_by_ghz_diag() {
    let v = json(&sepscope(&["analyze", "--state", "ghz:1", "--noise", "0.1", "--format", "json"]));
    assert_eq!(v["overall"], "separable_certified");
    assert!(v["decided_by"].as_array().unwrap().iter().any(|c| c == "ghz_diag"));
}

#[test]
fn analyze_maximally_mixed_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mm.json");
    let rows: Vec<Vec<[f64; 2]>> = (0..8)
        .map(|i| (0..8).map(|j| [if i == j { 0.125 } else { 0.0 }, 0.0]).collect())
        .collect();
    std::fs::write(&path, serde_json::json!({"shape": [2, 2, 2], "matrix": rows}).to_string()).unwrap();
    let v = json(&sepscope(&["analyze", "--file", path.to_str().unwrap(), "--format", "json"]));
    assert_eq!(v["overall"], "separable_certified");
    assert!(v["decided_by"].as_array().unwrap().iter().any(|c| c == "l1"));
}

#[test]
fn json_reports_are_byte_identical() {
    let a = stdout(&sepscope(&["analyze", "--state", "w", "--noise", "0.15", "--format", "json"]));
    let b = stdout(&sepscope(&["analyze", "--state", "w", "--noise", "0.15", "--format", "json"]));
    assert_eq!(a, b);
}

#[test]
fn thresholds() {
    for (state, want) in [("w", 3.0 / (3.0 + 8.0 * 2f64.sqrt())), ("braid:3:1", 0.2), ("ghz:1", 0.2)] {
        let v = json(&sepscope(&["threshold", "--state", state, "--format", "json"]));
        let t = v["threshold"].as_f64().unwrap();
        assert!((t - want).abs() < 1e-6, "{state}: {t}");
        assert_eq!(v["scan"].as_array().unwrap().len(), 64);
    }
}

#[test]
fn threshold_csv_has_one_column_per_site() {
    let o = sepscope(&["threshold", "--state", "braid:3:1", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "p,min_ptu_eigenvalue_site_0,min_ptu_eigenvalue_site_1,min_ptu_eigenvalue_site_2"
    );
    assert_eq!(lines.count(), 64);
}

#[test]
fn certify_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("b1.json");
    let cert_s = cert.to_str().unwrap();
    let o = sepscope(&["certify", "--state", "braid:3:1", "--noise", "0.15", "--method", "braid_mixed", "--output", cert_s]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let ok = sepscope(&["analyze", "--certificate", cert_s, "--against", "braid:3:1", "--noise", "0.15"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["valid"], true);

    let wrong = sepscope(&["analyze", "--certificate", cert_s, "--against", "braid:3:1", "--noise", "0.1"]);
    assert_eq!(wrong.status.code(), Some(1));
    assert_eq!(json(&wrong)["valid"], false);
}

#[test]
fn certify_two_param_origin() {
    let o = sepscope(&["certify", "--state", "two_param:0:0", "--method", "two_param"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["terms"].as_array().unwrap().len(), 4);
}

#[test]
fn certify_l1_refuses_ghz() {
    let o = sepscope(&["certify", "--state", "ghz:1", "--method", "l1"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("l1 sum 7 > 1"));
}

#[test]
fn exported_matrices_reload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let p = path.to_str().unwrap();
    assert_eq!(sepscope(&["export", "--state", "w", "--noise", "0.3", "--output", p]).status.code(), Some(0));
    let from_file = json(&sepscope(&["analyze", "--file", p, "--format", "json"]));
    let from_expr = json(&sepscope(&["analyze", "--state", "w", "--noise", "0.3", "--format", "json"]));
    assert_eq!(from_file["spectrum"], from_expr["spectrum"]);
    assert_eq!(from_file["overall"], from_expr["overall"]);
}

#[test]
fn exit_codes_by_error_category() {
    assert_eq!(sepscope(&["analyze", "--state", "bogus"]).status.code(), Some(2));
    assert_eq!(sepscope(&["analyze", "--state", "two_param:0.9,0.9"]).status.code(), Some(4));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"shape":[2],"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}"#).unwrap();
    assert_eq!(sepscope(&["analyze", "--file", bad.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn tolerance_from_environment() {
    let bad = Command::new(env!("CARGO_BIN_EXE_sepscope"))
        .args(["analyze", "--state", "w"])
        .env("SEPSCOPE_TOL", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_sepscope"))
        .args(["analyze", "--state", "w", "--format", "json"])
        .env("SEPSCOPE_TOL", "1e-8")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}
