//! End-to-end checks of the `cqed` binary: exit codes, CSV schema, and
//! reproducibility.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cqed"))
}

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const SMALL_SPECTRUM: &str = "[sweep]\nstart = 0.0\nstop = 0.3\ncount = 4\n\n\
[numerics]\nn_fock = 12\nk_levels = 3\n\n[model]\ncompare_jcm = true\n";

#[test]
fn unknown_config_key_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", "[model]\nomega_x = 2.0\n");
    let out = bin()
        .args(["spectrum", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("omega_x"), "stderr: {msg}");
}

#[test]
fn invalid_value_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.toml", "[numerics]\nn_fock = 1\n");
    let out = bin()
        .args(["vacuum", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n_fock"));
}

#[test]
fn missing_config_file_exits_with_code_5() {
    let out = bin()
        .args(["spectrum", "--config", "/nonexistent/nowhere.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn spectrum_schema_and_metadata() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.toml", SMALL_SPECTRUM);
    let csv = dir.path().join("s.csv");
    let out = bin()
        .args(["spectrum", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "coupling,e0,e1,e2,jcm_e0,jcm_e1,jcm_e2"
    );
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 1 + 4);
    for row in &data[1..] {
        assert_eq!(row.split(',').count(), 7);
        for cell in row.split(',') {
            cell.parse::<f64>().unwrap();
        }
    }
    assert!(text.contains("# job = spectrum"));
    assert!(text.contains("# config_sha256 = "));
}

#[test]
fn rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.toml", SMALL_SPECTRUM);
    let mut outputs = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let csv = dir.path().join(name);
        let out = bin()
            .args(["spectrum", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(&csv)
            .output()
            .unwrap();
        assert!(out.status.success());
        outputs.push(std::fs::read(&csv).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn n_fock_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "job.toml", SMALL_SPECTRUM);
    let csv = dir.path().join("s.csv");
    let out = bin()
        .args(["spectrum", "--config"])
        .arg(&cfg)
        .args(["--n-fock", "15", "--out"])
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("# n_fock = 15"));
}
