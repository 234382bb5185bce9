//! End-to-end checks of the command-line interface through the compiled
//! binary: file formats, exit codes, and determinism.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_casinv"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    match stdin {
        Some(text) => {
            cmd.stdin(Stdio::piped());
            let mut child = cmd.spawn().expect("spawn");
            child
                .stdin
                .take()
                .unwrap()
                .write_all(text.as_bytes())
                .expect("write stdin");
            child.wait_with_output().expect("wait")
        }
        None => {
            cmd.stdin(Stdio::null());
            cmd.output().expect("run")
        }
    }
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("casinv-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn family_pipes_into_invariants() {
    let family = run(&["family", "t0", "--n", "4"], None);
    assert!(family.status.success());
    let inv = run(
        &["invariants", "--method", "closed-form"],
        Some(&stdout(&family)),
    );
    assert!(inv.status.success());
    assert_eq!(stdout(&inv), "e[1,4]\ne[1,3]*e[2,4] - e[1,4]*e[2,3]\n");
}

#[test]
fn g48_normalization_pipeline() {
    let family = run(&["family", "g48", "--b", "-1"], None);
    assert!(family.status.success());
    let inv = run(
        &["invariants", "--method", "normalize"],
        Some(&stdout(&family)),
    );
    assert!(inv.status.success());
    assert_eq!(stdout(&inv), "x1\n(x1*x4 - x2*x3)/x1\n");
    // no invariants for b != -1
    let family = run(&["family", "g48", "--b", "1/2"], None);
    let count = run(&["count"], Some(&stdout(&family)));
    assert!(count.status.success());
    assert_eq!(stdout(&count), "0\n");
}

#[test]
fn verify_round_trip_from_json_output() {
    let path = tmpfile("st4.json");
    let family = run(
        &["family", "st", "--n", "4", "-o", path.to_str().unwrap()],
        None,
    );
    assert!(family.status.success());
    for method in ["closed-form", "normalize"] {
        let inv = run(
            &[
                "invariants",
                path.to_str().unwrap(),
                "--method",
                method,
                "--json",
            ],
            None,
        );
        assert!(inv.status.success(), "{method}");
        let verify = run(
            &["verify", path.to_str().unwrap(), "-"],
            Some(&stdout(&inv)),
        );
        assert!(verify.status.success(), "{method}");
        let text = stdout(&verify);
        assert!(!text.is_empty());
        for line in text.lines() {
            assert!(line.starts_with("true\t"), "{method}: {line}");
        }
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn symmetrize_outputs_pbw_form() {
    let path = tmpfile("g48.json");
    run(
        &["family", "g48", "--b", "-1", "-o", path.to_str().unwrap()],
        None,
    );
    let out = run(
        &["symmetrize", path.to_str().unwrap(), "x1*x4 - x2*x3"],
        None,
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "e1*e4 - e2*e3 + 1/2*e1\n");
    let out = run(
        &["symmetrize", path.to_str().unwrap(), "x4 - x2*x3/x1"],
        None,
    );
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(e1*e4 - e2*e3) / (e1)\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn validate_reports_jacobi_failures() {
    let bad = r#"{
        "dim": 3,
        "basis": ["e1", "e2", "e3"],
        "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 2, "c": "1"}]},
            {"i": 1, "j": 3, "terms": [{"k": 3, "c": "1"}]},
            {"i": 2, "j": 3, "terms": [{"k": 1, "c": "1"}]}
        ]
    }"#;
    let out = run(&["validate"], Some(bad));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("jacobi violation at (1,2,3)"));
    // a garbled file is a parse failure with a structured error object
    let out = run(&["validate"], Some("{ not json"));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("\"kind\""), "{err}");
}

#[test]
fn closed_form_refuses_plain_tables() {
    let table = r#"{
        "dim": 2,
        "basis": ["e1", "e2"],
        "brackets": []
    }"#;
    let out = run(&["invariants", "--method", "closed-form"], Some(table));
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("normaliz"), "{err}");
    // the normalization method handles it
    let out = run(&["invariants", "--method", "normalize"], Some(table));
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x1\nx2\n");
}

#[test]
fn fractional_power_products_round_trip() {
    // gamma = (0,0,3,2) forces a fractional exponent in the closed form
    let path = tmpfile("frac.json");
    let family = run(
        &[
            "family",
            "t_gamma",
            "--n",
            "4",
            "--gamma",
            "0,0,3,2",
            "-o",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert!(family.status.success());
    let inv = run(
        &[
            "invariants",
            path.to_str().unwrap(),
            "--method",
            "closed-form",
        ],
        None,
    );
    assert!(inv.status.success());
    let text = stdout(&inv);
    assert!(
        text.contains("^("),
        "expected a fractional exponent: {text}"
    );
    let verify = run(&["verify", path.to_str().unwrap(), "-"], Some(&text));
    assert!(verify.status.success());
    for line in stdout(&verify).lines() {
        assert!(line.starts_with("true\t"), "{line}");
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn deterministic_output() {
    let family = run(
        &["family", "t_gamma", "--n", "4", "--gamma", "1,0,-2,1"],
        None,
    );
    assert!(family.status.success());
    let first = run(
        &["invariants", "--method", "closed-form", "--json"],
        Some(&stdout(&family)),
    );
    let second = run(
        &["invariants", "--method", "closed-form", "--json"],
        Some(&stdout(&family)),
    );
    assert_eq!(first.stdout, second.stdout);
    let c1 = run(&["count", "--seed", "7"], Some(&stdout(&family)));
    let c2 = run(&["count", "--seed", "7"], Some(&stdout(&family)));
    assert_eq!(c1.stdout, c2.stdout);
}

#[test]
fn explain_logs_eliminations() {
    let family = run(&["family", "t0", "--n", "3"], None);
    let inv = run(
        &["invariants", "--method", "normalize", "--explain"],
        Some(&stdout(&family)),
    );
    assert!(inv.status.success());
    let log = String::from_utf8_lossy(&inv.stderr).into_owned();
    assert!(log.contains("solved for"), "{log}");
}
