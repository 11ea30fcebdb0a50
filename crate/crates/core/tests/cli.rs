//! The command-line front end: exit codes, output formats, determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_combwalk")).args(args).output().expect("spawn combwalk")
}

#[test]
fn escape_json_is_unitary() {
    let out = run(&["escape", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = &v["rows"][0];
    let teeth = row["P_Teeth"].as_f64().unwrap();
    let spine = row["P_Spine"].as_f64().unwrap();
    assert!((teeth + spine - 1.0).abs() < 1e-5);
    assert!((row["sum"].as_f64().unwrap() - 1.0).abs() < 1e-5);
    assert_eq!(v["command"], "escape");
}

#[test]
fn csv_carries_schema_line() {
    let out = run(&["amplitude", "--n", "-2", "--j", "3", "-t", "4", "--engine", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# schema: amplitude:"));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert!(header.contains(&"residual"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["saddles", "-u", "1"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    // residual check that cannot pass
    let strict = run(&["amplitude", "--n", "2", "--j", "3", "-t", "4", "--engine", "both", "--check-tol", "1e-30"]);
    assert_eq!(strict.status.code(), Some(2));
    assert_eq!(run(&["stokes-atlas", "--grid", "1"]).status.code(), Some(3));
}

#[test]
fn identical_flags_give_identical_files() {
    let dir = std::env::temp_dir().join(format!("combwalk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    for p in [&a, &b] {
        let out = run(&["stokes-atlas", "--grid", "8", "-o", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_subcommand_accepts_all_engines() {
    let cases: &[&[&str]] = &[
        &["evolve", "-t", "3", "--radius", "2"],
        &["amplitude", "--n", "1", "--j", "1", "-t", "3"],
        &["return-prob", "--t-max", "20", "--dt", "5"],
        &["profile-tooth", "-t", "40", "--du", "0.5"],
        &["profile-spine", "-t", "40", "--dv", "0.5"],
        &["escape", "-t", "40"],
        &["saddles", "-u", "1", "-v", "0.5"],
        &["stokes-atlas", "--grid", "4"],
        &["completeness-check", "--max", "1", "--nodes", "64"],
    ];
    for args in cases {
        for engine in ["exact", "analytic", "both"] {
            let mut full = args.to_vec();
            full.extend(["--engine", engine]);
            let out = run(&full);
            let code = out.status.code();
            assert_eq!(code, Some(0), "{full:?}: {}", String::from_utf8_lossy(&out.stderr));
            assert!(!out.stdout.is_empty(), "{full:?}");
        }
    }
}
