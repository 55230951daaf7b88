use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use bjorling::meshio::read_obj;
use serde_json::Value;

fn bjorling(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bjorling")).args(args).current_dir(dir).output().unwrap()
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn generate_circular_helicoid() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("circular_a2.json");
    let out = bjorling(&["generate", "--config", cfg.to_str().unwrap(), "--out", "o"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("o/circular_a2.report.json")).unwrap()).unwrap();
    assert_eq!(report["degree"], 3);
    assert_eq!(report["regular"], true);
    assert_eq!(report["mesh"]["singular_vertices"], 0);
    let mesh = read_obj(fs::read(dir.path().join("o/circular_a2.obj")).unwrap().as_slice()).unwrap();
    assert_eq!(mesh.positions.len(), 128 * 32);
}

#[test]
fn analyze_singular_ellipse() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config("ellipse_l1_a2.json");
    let out = bjorling(&["analyze", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 0);
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["regular"], false);
    assert_eq!(report["common_roots"].as_array().unwrap().len(), 2);
    assert!(fs::read_dir(dir.path()).unwrap().next().is_none(), "analyze writes nothing");
}

#[test]
fn config_errors_exit_2_and_write_nothing() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "{\"method\": \"lift\",").unwrap();
    fs::write(dir.path().join("unknown.json"), r#"{"method": "lift", "curve": {"name": "spiral"}, "lambda": 1, "spin": {"a": 0, "b": 0}}"#).unwrap();
    for name in ["bad.json", "unknown.json", "missing.json"] {
        let out = bjorling(&["generate", "--config", name, "--out", "o"], dir.path());
        assert_eq!(code(&out), 2, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!dir.path().join("o").exists(), "{name}");
    }
}

#[test]
fn math_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.json"), r#"{"method": "clothoid", "lambda": -1}"#).unwrap();
    let out = bjorling(&["generate", "--config", "c.json"], dir.path());
    assert_eq!(code(&out), 3);
}

#[test]
fn unavailable_analysis_still_writes_the_mesh() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("spiral.json"),
        r#"{"method": "lift", "curve": {"name": "archimedean"}, "lambda": 2, "spin": {"a": 1, "b": 0},
            "domain": {"u": [-3, 3], "v": [-0.5, 0.5], "nu": 16, "nv": 8}}"#,
    )
    .unwrap();
    let out = bjorling(&["generate", "--config", "spiral.json"], dir.path());
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("spiral.report.json")).unwrap()).unwrap();
    assert_eq!(report["analysis"], "unavailable");
    assert!(dir.path().join("spiral.obj").exists());
}

#[test]
fn examples_list_and_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjorling(&["examples", "list"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).lines().count() >= 24);

    let out = bjorling(&["examples", "trefoil-mobius"], dir.path());
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    let lambda: f64 = text.lines().next().unwrap().trim_start_matches("lambda = ").parse().unwrap();
    assert!((lambda - 17f64.sqrt() / 4.0).abs() < 1e-15);
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("trefoil-mobius.report.json")).unwrap()).unwrap();
    assert_eq!(report["d"], 2);

    assert_eq!(code(&bjorling(&["examples", "nosuch"], dir.path())), 2);
}

#[test]
fn every_example_produces_a_readable_mesh() {
    let dir = tempfile::tempdir().unwrap();
    for e in bjorling_cli::registry::EXAMPLES {
        let w = bjorling_cli::commands::run_example(e.name, Some(dir.path())).unwrap_or_else(|err| panic!("{}: {err}", e.name));
        let mesh = read_obj(fs::read(&w.mesh).unwrap().as_slice()).unwrap();
        assert!(!mesh.faces.is_empty(), "{}", e.name);
        let report: Value = serde_json::from_str(&fs::read_to_string(&w.report).unwrap()).unwrap();
        assert!(report["analysis"].is_string(), "{}", e.name);
    }
}

#[test]
fn verify_fails_with_zero_tolerance() {
    let dir = tempfile::tempdir().unwrap();
    let out = bjorling(&["verify", "--suite", "fast", "--tol-override", "0"], dir.path());
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("[FAIL]"));
}
