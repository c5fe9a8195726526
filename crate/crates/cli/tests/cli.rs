use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn mqm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mqm")).args(args).output().expect("binary runs")
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("mqm-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fixture_fit_succeeds_and_writes_outputs() {
    let d = scratch("fit");
    let out = d.join("run");
    let o = mqm(&["fit", "--fixture", "lat_su2_g05", "--scan", "--per-t", "--out-dir", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["fit.json", "scan.csv", "per_t.csv", "summary.json", "manifest.json"] {
        assert!(out.join(f).exists(), "{f} missing");
    }
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["energy"].as_f64().unwrap() - 3.312).abs() < 0.026);
}

#[test]
fn usage_errors_exit_with_two() {
    let d = scratch("usage");
    let o = mqm(&["spectrum", "--cutoffs", "5..4", "--out-dir", s(&d)]);
    assert_eq!(code(&o), 2);
    let o = mqm(&["vqe", "--form", "nonsense"]);
    assert_eq!(code(&o), 2);
    let o = mqm(&["varmc", "--batch-size", "4", "--out-dir", s(&d)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn data_errors_exit_with_three() {
    let d = scratch("data");
    let o = mqm(&["fit", "--fixture", "lat_su2_g05", "--amax", "0.001", "--out-dir", s(&d.join("a"))]);
    assert_eq!(code(&o), 3);
    let csv = d.join("two.csv");
    std::fs::write(&csv, "T,n_t,E,sigma_E\n0.4,16,2.9,0.03\n0.3,16,2.8,0.02\n").unwrap();
    let o = mqm(&["fit", "--input", s(&csv), "--lambda", "0.5", "--out-dir", s(&d.join("b"))]);
    assert_eq!(code(&o), 3, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn runs_are_deterministic() {
    let d = scratch("det");
    let run = |tag: &str| {
        let out = d.join(tag);
        let o = mqm(&["varmc", "--lambda", "0.5", "--steps", "20", "--batch-size", "64", "--eval-samples", "500", "--seed", "9", "--out-dir", s(&out)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out.join("history.csv")).unwrap()
    };
    assert_eq!(run("a"), run("b"));
}

#[test]
fn manifest_reproduces_the_run() {
    let d = scratch("manifest");
    let out = d.join("spec");
    let o = mqm(&["spectrum", "--lambda", "0.5", "--cutoffs", "2..4", "--levels", "2", "--out-dir", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first = std::fs::read(out.join("scan.csv")).unwrap();
    std::fs::copy(out.join("manifest.json"), d.join("cfg.json")).unwrap();
    std::fs::remove_dir_all(&out).unwrap();
    let o = mqm(&["--config", s(&d.join("cfg.json")), "spectrum"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read(out.join("scan.csv")).unwrap(), first);
}

#[test]
fn bad_configs_are_usage_errors() {
    let d = scratch("cfg");
    let unknown = d.join("unknown.json");
    std::fs::write(&unknown, r#"{"version": 1, "fit": {"fixture": "lat_su2_g05", "bogus": 1}}"#).unwrap();
    assert_eq!(code(&mqm(&["--config", s(&unknown), "fit"])), 2);
    let version = d.join("version.json");
    std::fs::write(&version, r#"{"version": 99}"#).unwrap();
    assert_eq!(code(&mqm(&["--config", s(&version), "fit"])), 2);
    let missing = d.join("missing.json");
    std::fs::write(&missing, r#"{"version": 1}"#).unwrap();
    assert_eq!(code(&mqm(&["--config", s(&missing), "fit"])), 2);
}

#[test]
fn compare_reports_gaps() {
    let d = scratch("cmp");
    let fit = d.join("fit");
    assert_eq!(code(&mqm(&["fit", "--fixture", "lat_su2_g10", "--out-dir", s(&fit)])), 0);
    let absent = d.join("nowhere");
    let o = mqm(&["compare", "--inputs", &format!("{},{}", s(&fit), s(&absent)), "--out-dir", s(&d.join("report"))]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let md = String::from_utf8_lossy(&o.stdout);
    assert!(md.contains("n/a"));
    assert!(md.contains("nowhere"), "{md}");
    assert!(d.join("report").join("report.md").exists());
}
