//! End-to-end runs of the `dunkl` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dunkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .skip(2)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn hermite_eval_writes_versioned_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("h.svg");
    let o = dunkl(&[
        "hermite-eval",
        "--alpha=-0.5",
        "--n",
        "0",
        "--n",
        "3",
        "--grid",
        "-1:1:5",
        "--delta",
        "1",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema: hermite-eval/v1"));
    assert_eq!(lines.next(), Some("x1,h_0,delta1_h_0,h_3,delta1_h_3"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 5);
    // Classical ground state at 0 is pi^{-1/4}; it is annihilated by delta.
    assert!((rows[2][1] - std::f64::consts::PI.powf(-0.25)).abs() < 1e-14);
    assert!(rows.iter().all(|r| r[2].abs() < 1e-14));
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn heat_kernel_components_sum_to_the_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("pairs.csv");
    fs::write(&pairs, "x1,x2,y1,y2\n0.3,-0.4,1.1,0.2\n-1.0,0.5,0.7,0.9\n").unwrap();
    let o = dunkl(&[
        "heat-kernel",
        "--alpha=-0.5,0.7",
        "--t",
        "0.4",
        "--pairs",
        pairs.to_str().unwrap(),
        "--series",
        "--max-degree",
        "50",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().starts_with("x1,x2,y1,y2,G,G_eps00,G_eps01,G_eps10,G_eps11,series_50"));
    for r in data_rows(&text) {
        let sum: f64 = r[5..9].iter().sum();
        assert!((sum - r[4]).abs() < 1e-12 * r[4].abs());
        assert!((r[9] - r[4]).abs() < 1e-8 * r[4].abs());
    }
}

#[test]
fn heat_grid_svg_is_one_dimensional_only() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("g.svg");
    let ok = dunkl(&["heat-kernel", "--alpha", "0", "--t", "1", "--grid", "-2:2:9", "--svg", svg.to_str().unwrap()]);
    assert!(ok.status.success());
    assert_eq!(data_rows(&stdout(&ok)).len(), 81);
    assert!(svg.exists());
    let bad = dunkl(&["heat-kernel", "--alpha", "0,0", "--t", "1", "--grid", "-2:2:9"]);
    assert_eq!(bad.status.code(), Some(2));
}

fn write_coeffs(path: &Path) {
    fs::write(
        path,
        r#"{"alpha": [0.5], "max_degree": 4, "coeffs": [{"n": [1], "value": 1.0}, {"n": [2], "value": -2.0}]}"#,
    )
    .unwrap();
}

#[test]
fn riesz_and_heat_apply_round_trip_json() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("c.json");
    write_coeffs(&input);
    let out = dir.path().join("r.json");
    let o = dunkl(&["riesz-apply", "--coeffs", input.to_str().unwrap(), "--j", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let coeffs = v["coeffs"].as_array().unwrap();
    // R h_1 = m(1)/sqrt(lambda_1) h_0 with m(1, 1/2) = sqrt(6), lambda_1 = 5.
    let c0 = coeffs.iter().find(|e| e["n"] == serde_json::json!([0])).unwrap()["value"].as_f64().unwrap();
    assert!((c0 - (6.0f64 / 5.0).sqrt()).abs() < 1e-15);

    let h = dunkl(&["heat-apply", "--coeffs", input.to_str().unwrap(), "--t", "0.5"]);
    assert!(h.status.success());
    let v: serde_json::Value = serde_json::from_slice(&h.stdout).unwrap();
    let c1 = v["coeffs"].as_array().unwrap().iter().find(|e| e["n"] == serde_json::json!([1])).unwrap()["value"]
        .as_f64()
        .unwrap();
    assert!((c1 - (-0.5f64 * 5.0).exp()).abs() < 1e-15);

    let bad_j = dunkl(&["riesz-apply", "--coeffs", input.to_str().unwrap(), "--j", "2"]);
    assert_eq!(bad_j.status.code(), Some(2));
}

#[test]
fn riesz_kernel_csv_with_direct_column() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = dir.path().join("p.csv");
    fs::write(&pairs, "0.4,1.9\n-0.8,1.3\n").unwrap();
    let o = dunkl(&["riesz-kernel", "--alpha", "0.3", "--j", "1", "--pairs", pairs.to_str().unwrap(), "--direct"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert_eq!(text.lines().nth(1), Some("x1,y1,R,R_eps0,R_eps1,R_direct"));
    for r in data_rows(&text) {
        assert!((r[3] + r[4] - r[2]).abs() < 1e-14 * r[2].abs().max(1.0));
        assert!((r[2] - r[5]).abs() < 1e-6 * r[5].abs());
    }
}

#[test]
fn pairing_check_reports_and_rejects_overlap() {
    let o = dunkl(&[
        "pairing-check",
        "--alpha",
        "0",
        "--j",
        "1",
        "--f-center",
        "1.1",
        "--f-radius",
        "1.0",
        "--g-center",
        "4.6",
        "--g-radius",
        "1.5",
        "--degree",
        "200",
        "--zeta-points",
        "48",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "pairing-check/v1");
    assert!(v["residual"].as_f64().unwrap() < 1e-2);
    let overlap = dunkl(&[
        "pairing-check",
        "--alpha",
        "0",
        "--j",
        "1",
        "--f-center",
        "1.1",
        "--f-radius",
        "1.0",
        "--g-center",
        "1.5",
        "--g-radius",
        "1.0",
    ]);
    assert_eq!(overlap.status.code(), Some(2));
}

#[test]
fn verify_basis_on_defaults_passes_deterministically() {
    let a = dunkl(&["verify", "--suite", "basis"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = dunkl(&["verify", "--suite", "basis"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "verify/v1");
    assert_eq!(v["pass"], true);
    let ids: Vec<u64> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, vec![1, 2, 10]);
    assert!(v["checks"][0].get("wall_seconds").is_none());
    assert!(String::from_utf8_lossy(&a.stderr).contains("PASS  1"));
}

#[test]
fn verify_exits_nonzero_on_failure() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    // A 3-point rule cannot integrate degree-8 products.
    fs::write(&cfg, "alpha = [0.0]\n[harness]\nalphas = [[0.0]]\nquad_points = 3\n").unwrap();
    let o = dunkl(&["verify", "--suite", "basis", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn corrupted_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "alpha = [0.0\nmax_degree = ").unwrap();
    let o = dunkl(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::write(&cfg, "alpha = [-0.6]").unwrap();
    let o = dunkl(&["hermite-eval", "--config", cfg.to_str().unwrap(), "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha[0]"));
    let o = dunkl(&["hermite-eval", "--config", "/nonexistent.toml", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scans_require_a_seed_and_are_reproducible() {
    let missing = dunkl(&["scan-growth", "--alpha", "0", "--pairs", "10"]);
    assert_eq!(missing.status.code(), Some(2));
    let args = ["scan-smoothness", "--alpha=-0.5", "--seed", "7", "--pairs", "20", "--top-k", "4"];
    let a = dunkl(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, dunkl(&args).stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "scan/v1");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["sample_count"], 20);
    assert!(v["fd_halving_drift"].is_number());
    let g = dunkl(&["scan-growth", "--alpha", "0,0.5", "--seed", "3", "--pairs", "10", "--top-k", "2", "--j", "2"]);
    assert!(g.status.success(), "{}", String::from_utf8_lossy(&g.stderr));
}
