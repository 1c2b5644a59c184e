use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zerodist(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zerodist"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_string).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|c| c.parse::<f64>().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn zeros_constant_family_has_n_rows_and_sidecars() {
    let dir = tempfile::tempdir().unwrap();
    let o = zerodist(dir.path(), &["zeros", "--family", "constant", "--alpha", "1", "--n", "100", "--out", "z.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&dir.path().join("z.csv"));
    assert_eq!(header, ["k_level", "j_index", "zero", "rescaled_zero"]);
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r[0] == 100.0));
    assert!(rows.windows(2).all(|w| w[0][3] < w[1][3]));
    assert!(rows.iter().all(|r| r[3] > 0.0 && r[3] < 1.0 && r[2] == r[3]));

    let meta = read_json(&dir.path().join("z.csv.meta.json"));
    assert_eq!(meta["command"], "zeros");
    assert_eq!(meta["config"]["n"], 100);
    assert_eq!(meta["tolerances"]["stieltjes"], 1e-7);
    let validation = read_json(&dir.path().join("z.csv.validation.json"));
    assert_eq!(validation["all_pass"], true);
}

#[test]
fn outputs_are_bit_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.csv", "b.csv"] {
        let o = zerodist(dir.path(), &["phi-check", "--points", "50", "--seed", "7", "--out", name]);
        assert_eq!(code(&o), 0);
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn laguerre_rescaled_column_is_raw_over_n() {
    let dir = tempfile::tempdir().unwrap();
    let o = zerodist(dir.path(), &["zeros", "--family", "laguerre1", "--N", "100", "--n", "100", "--out", "l.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = csv_rows(&dir.path().join("l.csv"));
    assert_eq!(rows.len(), 100);
    for r in rows {
        assert!((r[3] - r[2] / 100.0).abs() <= 1e-15 * r[3].abs().max(1.0));
    }
}

#[test]
fn invalid_descriptor_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bad.json"),
        r#"{"name": "bad", "kind": "custom", "alpha": {"grid": [[0, 1], [1, -2]], "interp": "linear"}}"#,
    )
    .unwrap();
    let o = zerodist(dir.path(), &["zeros", "--family", "custom", "--spec", "bad.json"]);
    assert_eq!(code(&o), 2);
    std::fs::write(dir.path().join("typo.json"), r#"{"name": "x", "kind": "custom", "alpah": 1}"#).unwrap();
    let o = zerodist(dir.path(), &["zeros", "--spec", "typo.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn custom_descriptor_runs() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("ramp.json"),
        r#"{"name": "ramp", "kind": "custom", "alpha": {"grid": [[0, 0], [2, 4]], "interp": "linear"}, "scale_exponent": 1}"#,
    )
    .unwrap();
    let o = zerodist(dir.path(), &["zeros", "--spec", "ramp.json", "--n", "40", "--out", "r.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let meta = read_json(&dir.path().join("r.csv.meta.json"));
    assert_eq!(meta["extra"]["family"]["name"], "ramp");
    assert_eq!(meta["extra"]["family"]["construction"], "factorized");
}

#[test]
fn interlacing_violation_exits_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    let o = zerodist(
        dir.path(),
        &["zeros", "--family", "laguerre1", "--construction", "pinned", "--N", "30", "--n", "60", "--out", "p.csv"],
    );
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("interlacing violation"));
    let v = read_json(&dir.path().join("p.csv.validation.json"));
    assert_eq!(v["interlacing"], false);
    assert!(v["failure"].as_str().unwrap().contains("level"));
}

#[test]
fn density_presets_have_the_published_supports() {
    let dir = tempfile::tempdir().unwrap();
    let o = zerodist(dir.path(), &["density", "--preset", "fig1", "--out", "u.csv"]);
    assert_eq!(code(&o), 0);
    let (_, rows) = csv_rows(&dir.path().join("u.csv"));
    assert_eq!(rows.len(), 1000);
    assert!(rows.windows(2).all(|w| w[1][2] >= w[0][2]));

    // ν_t^L lives on (0, 27t/8), ν_t^M on (0, 27t²/4)
    let o = zerodist(dir.path(), &["density", "--preset", "fig2-laguerre", "--points", "50", "--out", "l.csv"]);
    assert_eq!(code(&o), 0);
    let s = &read_json(&dir.path().join("l.csv.meta.json"))["extra"]["support"];
    assert!((s[1].as_f64().unwrap() - 27.0 / 8.0 * 8.0 / 27.0).abs() < 1e-15);
    let o = zerodist(dir.path(), &["density", "--preset", "fig2-macdonald", "--points", "50", "--out", "m.csv"]);
    assert_eq!(code(&o), 0);
    let t = 2.0 / (3.0 * 3f64.sqrt());
    let s = &read_json(&dir.path().join("m.csv.meta.json"))["extra"]["support"];
    assert!((s[1].as_f64().unwrap() - 27.0 * t * t / 4.0).abs() < 1e-14);

    let o = zerodist(dir.path(), &["density", "--family", "laguerre1", "--t", "2", "--points", "20", "--format", "json", "--out", "l2.json"]);
    assert_eq!(code(&o), 0);
    let v = read_json(&dir.path().join("l2.json"));
    assert_eq!(v["rows"].as_array().unwrap().len(), 20);
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("run.json"), r#"{"command": "ks", "schedule": [20, 40], "out": "ks.csv"}"#).unwrap();
    let o = zerodist(dir.path(), &["ks", "--config", "run.json", "--schedule", "20,40,80"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&dir.path().join("ks.csv"));
    assert_eq!(header, ["n", "N", "statistic", "location"]);
    assert_eq!(rows.iter().map(|r| r[0]).collect::<Vec<_>>(), [20.0, 40.0, 80.0]);
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r[2])));
}

#[test]
fn bad_config_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("x.json"), r#"{"n": 3, "colour": "red"}"#).unwrap();
    assert_eq!(code(&zerodist(dir.path(), &["zeros", "--config", "x.json"])), 4);
    std::fs::write(dir.path().join("y.json"), r#"{"command": "ks"}"#).unwrap();
    assert_eq!(code(&zerodist(dir.path(), &["zeros", "--config", "y.json"])), 4);
    assert_eq!(code(&zerodist(dir.path(), &["zeros", "--config", "missing.json"])), 4);
    assert_eq!(code(&zerodist(dir.path(), &["verify", "--tol", "nonsense=1"])), 4);
}

#[test]
fn verify_subset_and_tolerance_override() {
    let dir = tempfile::tempdir().unwrap();
    let o = zerodist(dir.path(), &["verify", "--only", "phi"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let out = String::from_utf8_lossy(&o.stdout).into_owned();
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().all(|l| l.starts_with("PASS")));

    let o = zerodist(dir.path(), &["verify", "--only", "stieltjes", "--tol", "stieltjes=1e-5", "--out", "v.json"]);
    assert_eq!(code(&o), 0);
    let v = read_json(&dir.path().join("v.json"));
    assert_eq!(v["checks"][0]["metrics"][0]["required"], 1e-5);
    assert_eq!(read_json(&dir.path().join("v.json.meta.json"))["tolerances"]["stieltjes"], 1e-5);

    let o = zerodist(dir.path(), &["verify", "--only", "1", "--tol", "algebraic=0"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn ratio_alpha_zero_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let o = zerodist(dir.path(), &["ratio", "--alpha", "0", "--schedule", "10,20", "--z", "2,-1+i", "--out", "r.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = csv_rows(&dir.path().join("r.csv"));
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r[7] == 0.0));
    let o = zerodist(dir.path(), &["ratio", "--family", "laguerre1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn phi_on_its_cut_is_a_numeric_failure() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&zerodist(dir.path(), &["phi-check", "--z", "0.5"])), 3);
    assert_eq!(code(&zerodist(dir.path(), &["phi-check", "--z", "1+2x"])), 2);
}

#[test]
fn toeplitz_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = zerodist(dir.path(), &["toeplitz", "--alpha", "6.75", "--n", "6", "--out", "t.csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (_, rows) = csv_rows(&dir.path().join("t.csv"));
    assert_eq!(rows.len(), 6);
    let rep = read_json(&dir.path().join("t.csv.toeplitz.json"));
    assert_eq!(rep["total_nonnegativity"]["mode"], "exhaustive");
    assert_eq!(rep["total_nonnegativity"]["t_n"]["negative"], 0);
    assert_eq!(code(&zerodist(dir.path(), &["toeplitz", "--alpha", "-1"])), 2);
}
