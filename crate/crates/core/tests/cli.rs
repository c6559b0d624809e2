use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use corrkit::{estimate_g, load_paired, DataFormat, RngSeed, SplitPlan};

fn corrkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corrkit"))
        .args(args)
        .env_remove("CORRKIT_SEED")
        .output()
        .expect("run corrkit")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn compute_all_on_line() {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.csv").to_string_lossy().into_owned();
    let out = corrkit(&["synth", "--family", "line", "--n", "40", "--param", "slope=2", "--out", &line]);
    assert!(out.status.success());

    let out = corrkit(&["compute", "--in", &line, "--all"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "corrkit.compute.v1");
    let c = &v["coefficients"];
    assert!((c["r"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(c["kappa"]["value"], 1.0);
    assert_eq!(c["omega"]["value"], 1.0);
}

#[test]
fn compute_split_matches_library() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.csv").to_string_lossy().into_owned();
    assert!(corrkit(&["synth", "--family", "coarse_monotone", "--n", "50", "--seed", "4", "--out", &data])
        .status
        .success());
    let out = corrkit(&[
        "compute", "--in", &data, "--coef", "omega", "--train", "30", "--eval", "20", "--iters", "1000", "--seed", "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s = load_paired(Path::new(&data), DataFormat::Csv, "x", "y").unwrap();
    let est = estimate_g(&s, &SplitPlan::new(30, 20, 1000, RngSeed(9)).unwrap()).unwrap();
    assert_eq!(v["coefficients"]["omega"]["omega_mean"].as_f64(), Some(est.omega_mean));
    assert_eq!(v["coefficients"]["omega"]["omega_stddev"].as_f64(), Some(est.omega_stddev));
}

#[test]
fn constant_y_is_uncorrelated() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "const_y.csv", "x,y\n1,5\n2,5\n3,5\n4,5\n");
    let out = corrkit(&["compute", "--in", &p, "--coef", "omega"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["coefficients"]["omega"]["value"], 0.5);
    assert_eq!(v["coefficients"]["omega"]["note"], "Y constant: uncorrelated");

    let out = corrkit(&["compute", "--in", &p, "--coef", "r"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("r:") && err.contains("constant"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(corrkit(&["compute", "--bogus"]).status.code(), Some(1));
    assert_eq!(corrkit(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(corrkit(&["--help"]).status.code(), Some(0));
    assert_eq!(corrkit(&["compute", "--in", "/nonexistent.csv"]).status.code(), Some(2));
    assert_eq!(corrkit(&["synth", "--family", "line", "--n", "2"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "nan.csv", "x,y\n1,2\n2,4\nNaN,5\n");
    let out = corrkit(&["compute", "--in", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3"));
}

#[test]
fn seed_resolution() {
    let a = corrkit(&["synth", "--family", "noise", "--n", "10"]);
    let b = Command::new(env!("CARGO_BIN_EXE_corrkit"))
        .args(["synth", "--family", "noise", "--n", "10"])
        .env("CORRKIT_SEED", "42")
        .output()
        .unwrap();
    let c = Command::new(env!("CARGO_BIN_EXE_corrkit"))
        .args(["synth", "--family", "noise", "--n", "10"])
        .env("CORRKIT_SEED", "43")
        .output()
        .unwrap();
    let d = corrkit(&["synth", "--family", "noise", "--n", "10", "--seed", "43"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn panel_csv_and_json() {
    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/machining.jsonl");
    let f = fixture.to_string_lossy();
    let out = corrkit(&[
        "panel", "--in", &f, "--independent", "speed,feed,rms,energy,counts", "--dependent", "ra",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("independent,dependent,r,rho,tau,kappa,ncc,omega,omega_stddev,note\n"));

    let out = corrkit(&[
        "panel", "--in", &f, "--independent", "speed", "--dependent", "ra", "--output", "json", "--train", "30",
        "--eval", "20", "--iters", "50",
    ]);
    let v = json(&out);
    assert_eq!(v["schema"], "corrkit.panel.v1");
    assert_eq!(v["metadata"]["seed"], 42);
    assert!(v["rows"][0]["panel"]["omega_stddev"].is_number());
}

#[test]
fn plot_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("s.svg");
    let out = corrkit(&["plot", "--family", "sinusoid", "--n", "400", "--out", &svg.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(0));
    let a = fs::read_to_string(&svg).unwrap();
    assert_eq!(a.matches("<line").count(), 2);
    assert_eq!(a.matches(r#"class="separator""#).count(), 2);
    corrkit(&["plot", "--family", "sinusoid", "--n", "400", "--out", &svg.to_string_lossy()]);
    assert_eq!(a, fs::read_to_string(&svg).unwrap());

    // g = 1: one diagonal pair of quadrants is empty
    let out = corrkit(&["plot", "--family", "hetero_step", "--n", "100", "--seed", "11", "--out", &svg.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(0));
    let h = fs::read_to_string(&svg).unwrap();
    assert!(h.contains("C1-: 0") && h.contains("C2+: 0"), "{h}");

    let p = write(dir.path(), "tied.csv", "x,y\n1,2\n2,2\n3,2\n");
    let out = corrkit(&["plot", "--in", &p, "--out", &svg.to_string_lossy()]);
    assert_eq!(out.status.code(), Some(2));
}
