use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riffle-oracle"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exact_to_stdout() {
    let out = run(&["--quiet", "--out", "-", "exact", "--n", "4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# pmf.csv"));
    assert!(text.contains("# moments"));
    assert!(text.lines().any(|l| l == "4,5,16,0.3125"));
}

#[test]
fn files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert!(run(&["--quiet", "--out", d, "exact", "--n", "9"]).status.success());
    assert!(run(&["--quiet", "--out", d, "limit", "--grid-max", "1", "--grid-step", "0.5"]).status.success());
    let pmf = std::fs::read_to_string(dir.path().join("pmf.csv")).unwrap();
    assert_eq!(pmf.lines().count(), 11);
    let limit = std::fs::read_to_string(dir.path().join("limit.csv")).unwrap();
    assert_eq!(limit.lines().count(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--quiet", "--out", "-", "exact", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["--quiet", "--out", "-", "exact"]).status.code(), Some(2));
    assert_eq!(run(&["--quiet", "--out", "-", "exact", "--n", "99999999"]).status.code(), Some(3));
    assert_eq!(run(&["--quiet", "--out", "-", "limit", "--grid-step", "0"]).status.code(), Some(2));
}
