use std::process::{Command, Output};

use lgfisher::output::read_json;

fn lgfisher(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgfisher"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn report_prints_csv_row() {
    let out = lgfisher(&["report", "--b", "1", "--theta", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# lgfisher"));
    assert_eq!(lines.next().unwrap(), "theta,b,C,K_LG,F,F_Q,F_ratio");
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((row[2] + 1.0).abs() < 1e-10);
    assert!((row[4] - 35.0 / 3.0).abs() < 1e-8);
    assert!((row[6] - 1.0).abs() < 1e-8);
    assert!(lines.next().is_none());
}

#[test]
fn scan_theta_json_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let out = lgfisher(&[
        "scan-theta",
        "--b",
        "0.99",
        "--theta",
        "0:1:33",
        "--format",
        "json",
        "--plot",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let table = read_json(&path).unwrap();
    assert_eq!(table.rows.len(), 33);
    assert_eq!(table.metadata.command, "scan-theta");
    assert!(table.rows.iter().all(|r| r.b == 0.99));
    let svg = std::fs::read_to_string(path.with_extension("svg")).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn custom_partition_and_spin() {
    let out = lgfisher(&[
        "scan-b",
        "--two-j",
        "3",
        "--partition",
        "3:3,1;-3:-1,-3",
        "--b",
        "0:1:5",
        "--theta",
        "0.5",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 2 + 5);
}

#[test]
fn figures_written_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    for which in ["2b", "3"] {
        let out = lgfisher(&[
            "figure",
            which,
            "--plot",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
        let csv = std::fs::read_to_string(dir.path().join(format!("fig{which}.csv"))).unwrap();
        let rows = csv.lines().filter(|l| !l.starts_with('#')).count() - 1;
        assert_eq!(rows, if which == "2b" { 201 } else { 5 * 256 });
        assert!(dir.path().join(format!("fig{which}.svg")).exists());
    }
}

#[test]
fn bad_input_fails_with_one_line() {
    for args in [
        &["scan-theta", "--b", "1.5"][..],
        &["scan-theta", "--b", "0.5,0.6"],
        &["scan-b", "--theta", "0:1"],
        &["report", "--two-j", "4"],
        &["report", "--partition", "5:5;5:5"],
        &["report", "--format", "xml"],
        &["scan-theta", "--plot"],
        &["figure", "9"],
    ] {
        let out = lgfisher(args);
        assert!(!out.status.success(), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.trim_end().lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("lgfisher: "), "{err}");
    }
}
