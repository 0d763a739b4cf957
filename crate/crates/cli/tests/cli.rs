use std::path::Path;
use std::process::{Command, Output};

use modular_w1::arithmetic::DiscreteMeasure;
use modular_w1::hypgeo::Point;
use tempfile::TempDir;

fn modw1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modw1"))
        .args(args)
        .output()
        .unwrap()
}

fn config(dir: &TempDir, text: &str) -> String {
    let p = dir.path().join("config.toml");
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn write_measure(path: &Path, points: &[(f64, f64, f64)]) {
    let pts: Vec<(Point, f64)> = points
        .iter()
        .map(|&(x, y, w)| (Point::new(x, y).unwrap(), w))
        .collect();
    let m = DiscreteMeasure::from_points(&pts, "test").unwrap();
    m.write_table(std::fs::File::create(path).unwrap()).unwrap();
}

#[test]
fn bandwidth_below_one_is_config_error() {
    let dir = TempDir::new().unwrap();
    let c = config(&dir, "bandwidth = 0.5\n");
    assert_eq!(
        modw1(&["--config", &c, "kernel-mass"]).status.code(),
        Some(2)
    );
    let c = config(&dir, "[transform]\nbandwidths = [0.9]\n");
    assert_eq!(
        modw1(&["--config", &c, "transform-check"]).status.code(),
        Some(2)
    );
}

#[test]
fn malformed_inputs_are_config_errors() {
    let dir = TempDir::new().unwrap();
    let c = config(&dir, "bandwidth = \n");
    assert_eq!(modw1(&["--config", &c, "heegner"]).status.code(), Some(2));
    assert_eq!(
        modw1(&["--config", "/nonexistent.toml", "heegner"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        modw1(&["--maass-data", "/nonexistent.txt", "heegner"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn transform_check_at_large_bandwidth() {
    let dir = TempDir::new().unwrap();
    let c = config(&dir, "[transform]\nbandwidths = [10.0]\n");
    let out = modw1(&["--config", &c, "transform-check"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let kint = csv_rows(&out)
        .into_iter()
        .find(|r| r[1] == "kernel_integral")
        .unwrap();
    assert!(kint[5].parse::<f64>().unwrap() <= 1e-5);
}

#[test]
fn kernel_mass_three_rows() {
    let out = modw1(&["kernel-mass"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!((r[3].parse::<f64>().unwrap() - 1.0).abs() <= 1e-3);
    }
}

#[test]
fn weyl_compare_policies() {
    let dir = TempDir::new().unwrap();
    let c = config(&dir, "[weyl]\ndiscriminants = [-3, 5]\nt_values = [1.0]\n");
    let out = modw1(&["--config", &c, "weyl-compare"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = csv_rows(&out);
    assert_eq!(rows[0][6], "recorded");
    assert_eq!(rows[1][6], "pass");
    assert!((rows[1][4].parse::<f64>().unwrap() - 1.0).abs() <= 5e-3);
}

#[test]
fn failing_check_exits_one() {
    let dir = TempDir::new().unwrap();
    let c = config(&dir, "[tolerances]\nkernel_integral = 1e-30\n");
    assert_eq!(
        modw1(&["--config", &c, "transform-check"]).status.code(),
        Some(1)
    );
}

#[test]
fn outputs_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let c = config(&dir, "[mollify]\nsamples = 5\nepsilons = [0.2]\n");
    let a = modw1(&["--config", &c, "--seed", "7", "mollify-check"]);
    let b = modw1(&["--config", &c, "--seed", "7", "mollify-check"]);
    let other = modw1(&["--config", &c, "--seed", "8", "mollify-check"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn json_output_and_out_file() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("h.json");
    let out = modw1(&[
        "--json",
        "--out",
        out_path.to_str().unwrap(),
        "class-number",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["command"], "class-number");
    assert!(v["rows"].as_array().unwrap().len() > 50);
}

#[test]
fn heegner_and_geodesic_tables() {
    let out = modw1(&["heegner"]);
    let rows = csv_rows(&out);
    assert_eq!(rows.iter().filter(|r| r[0] == "-23").count(), 3);
    let out = modw1(&["--json", "geodesics"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let d5 = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["D"] == 5)
        .unwrap();
    assert_eq!(d5["form"], "(-1,1,1)");
    assert_eq!((d5["t"].as_i64(), d5["u"].as_i64()), (Some(3), Some(1)));
}

#[test]
fn wasserstein_between_files() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    let plan = dir.path().join("plan.txt");
    write_measure(&a, &[(0.0, 1.0, 1.0)]);
    write_measure(&b, &[(0.0, 2.0, 1.0)]);
    let out = modw1(&[
        "wasserstein",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--sinkhorn-reg",
        "0.01",
        "--plan",
        plan.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = csv_rows(&out);
    assert!((rows[0][1].parse::<f64>().unwrap() - 2f64.ln()).abs() < 1e-12);
    let plan = std::fs::read_to_string(&plan).unwrap();
    assert!(plan.lines().any(|l| l.starts_with("0 0 1.0")));
}

#[test]
fn duke_single_point_source() {
    let dir = TempDir::new().unwrap();
    let c = config(
        &dir,
        "[haar]\nn_x = 6\nn_levels = 6\ny_max = 4.0\n[duke]\ndiscriminants = [-4]\n",
    );
    let out = modw1(&["--config", &c, "duke"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("NOT an upper bound"));

    let grid = modular_w1::arithmetic::HaarGrid {
        n_x: 6,
        n_levels: 6,
        y_max: 4.0,
    };
    let haar = modular_w1::arithmetic::haar_discretization(grid).unwrap();
    let i = Point::new(0.0, 1.0).unwrap();
    let mean: f64 = haar
        .atoms()
        .iter()
        .map(|a| a.weight * modular_w1::hypgeo::surface_distance(i, a.point.point))
        .sum();
    let rows = csv_rows(&out);
    assert!((rows[0][3].parse::<f64>().unwrap() - mean).abs() < 1e-9);
}
