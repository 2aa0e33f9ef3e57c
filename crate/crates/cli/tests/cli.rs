use std::fs;
use std::path::Path;

use assert_cmd::Command;
use serde_json::Value;

fn bin() -> Command {
    Command::cargo_bin("compton-bell").unwrap()
}

fn stderr_of(out: &std::process::Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn peak_defaults_to_degenerate_hard_xray() {
    let out = bin().arg("peak").output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["theta_star_deg"].as_f64().unwrap() - 89.98).abs() < 0.02);
    assert!((v["value"].as_f64().unwrap() / 1713.04 - 1.0).abs() < 0.01);
    assert_eq!(v["grid_step_deg"].as_f64().unwrap(), 0.001);
}

#[test]
fn peak_at_annihilation_energy() {
    let out = bin()
        .args(["peak", "--e-oi-kev", "511", "--e-os-kev", "511"])
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["theta_star_deg"].as_f64().unwrap() - 82.0).abs() < 1.0);
    assert!((v["value"].as_f64().unwrap() / 2.85 - 1.0).abs() < 0.02);
}

#[test]
fn figure_sidecar_reproduces_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["figure", "fig4a", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let listed = String::from_utf8(out.stdout).unwrap();
    assert_eq!(listed.lines().count(), 2);

    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("fig4a.json")).unwrap()).unwrap();
    let entry = &manifest["outputs"][0];
    assert_eq!(entry["command"], "ratio-scan");
    let cfg_path = dir.path().join("replay.json");
    fs::write(&cfg_path, entry["configs"][0].to_string()).unwrap();

    let replay = dir.path().join("replay.csv");
    let status = bin()
        .args(["ratio-scan", "--config"])
        .arg(&cfg_path)
        .arg("--out")
        .arg(&replay)
        .output().unwrap().status;
    assert!(status.success());
    assert_eq!(fs::read(&replay).unwrap(), fs::read(dir.path().join("fig4a.csv")).unwrap());
}

#[test]
fn fig6_writes_three_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin().args(["figure", "fig6", "--out"]).arg(dir.path()).output().unwrap().status;
    assert!(status.success());
    for f in ["fig6a.csv", "fig6b.csv", "fig6c.csv", "fig6.json"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"e_oi_kev": 10.0, "e_os_kev": 15.0, "theta_min_deg": 89.0, "theta_max_deg": 91.0, "theta_step_deg": 1.0}"#).unwrap();
    let out = bin()
        .args(["ratio-scan", "--format", "json", "--e-oi-kev", "12.5", "--e-os-kev", "12.5", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["metadata"]["e_oi_kev"], "12.5");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert_eq!(v["columns"][1], "ratio");
}

#[test]
fn invalid_config_names_field_on_one_line() {
    let out = bin()
        .args(["xsec-scan", "--theta-min-deg", "100", "--theta-max-deg", "80"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let err = stderr_of(&out);
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.contains("theta_min_deg"), "{err}");
    assert!(out.stdout.is_empty());

    let out = bin().args(["xsec-scan", "--e-b-kev", "-1"]).output().unwrap();
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("e_b_kev"));
}

#[test]
fn unknown_figure_lists_valid_names() {
    let out = bin().args(["figure", "fig9"]).output().unwrap();
    assert!(!out.status.success());
    let err = stderr_of(&out);
    assert_eq!(err.trim_end().lines().count(), 1);
    for name in ["fig3a", "fig3b", "fig4a", "fig4b", "fig6"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn usage_errors_are_single_line() {
    let out = bin().args(["xsec-scan", "--nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_of(&out).trim_end().lines().count(), 1);
}

fn write_table(dir: &Path, body: &str) -> std::path::PathBuf {
    let p = dir.join("s.csv");
    fs::write(&p, format!("x_inv_angstrom,s\n{body}")).unwrap();
    p
}

#[test]
fn scattering_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = write_table(dir.path(), "0.0,0.0\n0.2,0.6\n0.5,1.4\n1.0,1.9\n2.0,2.0\n");
    let out = bin()
        .args(["xsec-scan", "--z", "2", "--theta-min-deg", "80", "--theta-max-deg", "100", "--theta-step-deg", "5", "--s-table"])
        .arg(&table)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# scattering_table:") && text.contains("(Z = 2)"));
    assert!(!text.contains("free-electron"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 6);

    let bad = write_table(dir.path(), "0.0,0.0\n0.5,2.5\n");
    let out = bin().args(["xsec-scan", "--z", "2", "--s-table"]).arg(&bad).output().unwrap();
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("line 3"), "{}", stderr_of(&out));

    let out = bin().args(["xsec-scan", "--s-table", "/nonexistent/s.csv"]).output().unwrap();
    assert!(!out.status.success());
    assert!(stderr_of(&out).contains("/nonexistent/s.csv"));
}
