use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helmcauchy")).args(args).output().unwrap()
}

fn out_arg(dir: &Path) -> String {
    dir.to_str().unwrap().to_string()
}

#[test]
fn table1_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["table1", "--delta", "1e-2,1e-3", "--z0", "0.25", "--out", &out_arg(dir.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("table1.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "delta,E(0.25),bound(0.25),eps,modes");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1.0000000E-02,"));
    let manifest = std::fs::read_to_string(dir.path().join("table1_manifest.txt")).unwrap();
    assert!(manifest.contains("deltas = 0.01, 0.001"));
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# quick run\ndeltas = 1e-1\nz0 = 0.4, 0.1\nquad_order = 7\n").unwrap();
    let out = dir.path().join("out");
    let o = run(&["table2", "--config", cfg.to_str().unwrap(), "--z0", "0.05", "--out", &out_arg(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let manifest = std::fs::read_to_string(out.join("table2_manifest.txt")).unwrap();
    assert!(manifest.contains("quad_order = 7"));
    assert!(manifest.contains("z0 = 0.05"));
    assert!(manifest.contains("experiment = table2"));
}

#[test]
fn identical_runs_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert!(run(&["table3", "--delta", "1e-5", "--out", &out_arg(d.path())]).status.success());
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("table3.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn fixed_point_variant() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["table3", "--solver", "fixed-point", "--delta", "1e-3", "--z0", "1.45", "--out", &out_arg(dir.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("table3_fixed_point.csv").exists());
}

#[test]
fn figure_and_bounds() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(&["figure", "--out", &out_arg(dir.path())]).status.success());
    assert!(dir.path().join("figure.csv").exists());
    let files = std::fs::read_to_string(dir.path().join("figure.csv")).unwrap();
    assert_eq!(files.lines().count(), 3);
    assert!(run(&["bounds", "--out", &out_arg(dir.path())]).status.success());
    let b = std::fs::read_to_string(dir.path().join("bounds.csv")).unwrap();
    assert_eq!(b.lines().count(), 17);
}

#[test]
fn parameter_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["table1", "--z0", "0.9", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("z0"));
    let o = run(&["table1", "--quad-order", "0", "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn overflow_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("big.cfg");
    std::fs::write(&cfg, "blowup_n = 2, 2000\n").unwrap();
    let o = run(&["blowup", "--config", cfg.to_str().unwrap(), "--out", &out_arg(dir.path())]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn io_errors_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let o = run(&["blowup", "--out", blocker.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&["table1", "--config", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn manifest_reruns_the_same_report() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert!(run(&["table2", "--delta", "1e-3", "--out", &out_arg(a.path())]).status.success());
    let manifest = a.path().join("table2_manifest.txt");
    let o = run(&["table2", "--config", manifest.to_str().unwrap(), "--out", &out_arg(b.path())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let read = |d: &Path| std::fs::read(d.join("table2.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}
