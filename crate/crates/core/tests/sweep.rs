use std::path::PathBuf;

use unruh_cp::explorer::{fit_slope, run_sweep, write_csv, SweepConfig, SweepRow};

fn configs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn config(r_grid: &str, a_grid: &str, methods: &str, threads: Option<usize>) -> SweepConfig {
    let threads = threads.map(|n| format!(r#", "threads": {n}"#)).unwrap_or_default();
    let text = format!(
        r#"{{"atom": "atoms/two_level.json", "R_grid": {r_grid}, "a_grid": {a_grid},
            "methods": {methods}, "output_path": "unused.csv"{threads}}}"#
    );
    SweepConfig::from_json_str(&text, &configs()).unwrap()
}

fn csv_bytes(rows: &[SweepRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(rows, unruh_cp::model::units::UnitMode::Natural, &mut buf).unwrap();
    buf
}

#[test]
fn inertial_rows_decrease_in_magnitude() {
    let cfg = config(r#"{"min": 0.5, "max": 5, "count": 3}"#, r#"{"value": 0}"#, r#"["contour"]"#, None);
    let rows = run_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 3);
    let v: Vec<f64> = rows.iter().map(|r| r.v_contour.unwrap()).collect();
    assert!(v.iter().all(|x| *x < 0.0));
    assert!(v.windows(2).all(|w| w[1].abs() < w[0].abs()));
}

#[test]
fn dual_method_rows_agree() {
    let cfg = config(
        r#"{"min": 0.1, "max": 100, "count": 4}"#,
        r#"{"min": 0.001, "max": 0.1, "count": 3}"#,
        r#"["contour", "oracle"]"#,
        None,
    );
    for row in run_sweep(&cfg).unwrap() {
        let d = row.rel_diff.expect("both methods populated");
        assert!(d < 1e-4, "R={} a={} rel_diff={d}", row.r, row.a);
    }
}

#[test]
fn excited_point_is_recorded_not_fatal() {
    let cfg = config(r#"{"value": 1}"#, r#"{"value": 20}"#, r#"["contour"]"#, None);
    let rows = run_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 1);
    assert!(rows[0].v_contour.is_none());
    assert!(rows[0].rel_diff.is_none());
    assert!(rows[0].warnings[0].contains("regime error"));
}

#[test]
fn rows_are_ordered_and_complete() {
    let cfg = config(
        r#"{"values": [3, 0.2, 1]}"#,
        r#"{"values": [0.01, 0, 0.001]}"#,
        r#"["contour", "asymptotic"]"#,
        Some(3),
    );
    let rows = run_sweep(&cfg).unwrap();
    let keys: Vec<(f64, f64)> = rows.iter().map(|r| (r.a, r.r)).collect();
    let mut want = Vec::new();
    for a in [0.0, 0.001, 0.01] {
        for r in [0.2, 1.0, 3.0] {
            want.push((a, r));
        }
    }
    assert_eq!(keys, want);
}

#[test]
fn output_independent_of_thread_count() {
    let grid = (r#"{"min": 0.1, "max": 100, "count": 8}"#, r#"{"values": [0, 0.001, 0.03, 5]}"#);
    let methods = r#"["contour", "oracle", "asymptotic"]"#;
    let one = csv_bytes(&run_sweep(&config(grid.0, grid.1, methods, Some(1))).unwrap());
    for n in [2, 8] {
        let many = csv_bytes(&run_sweep(&config(grid.0, grid.1, methods, Some(n))).unwrap());
        assert_eq!(one, many, "{n} threads");
    }
    let default_pool = csv_bytes(&run_sweep(&config(grid.0, grid.1, methods, None)).unwrap());
    assert_eq!(one, default_pool);
}

#[test]
fn far_zone_slope_from_rows() {
    let cfg = config(r#"{"min": 50, "max": 200, "count": 6}"#, r#"{"value": 0}"#, r#"["contour"]"#, None);
    let rows = run_sweep(&cfg).unwrap();
    let fit = fit_slope(&rows, "R", "V_contour", (50.0, 200.0)).unwrap();
    assert!((fit.slope + 7.0).abs() < 0.01);
    assert!(fit.r_squared > 0.9999);
}
