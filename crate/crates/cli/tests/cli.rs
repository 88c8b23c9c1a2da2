//! End-to-end checks of the binary: exit codes, the documented JSON shapes,
//! and byte-stable output under a fixed seed.

use std::process::{Command, Output};

fn trilin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trilin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn classify_two_line_point() {
    let out = trilin(&["classify", "--n", "5", "--alpha", "2,-4,-6"]);
    let v = stdout_json(&out);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["stratum"], "Z2I");
    assert_eq!(v["dim_tri"], 2);
    assert_eq!(v["dim_tri_diag"], 1);
    assert_eq!(v["lines"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_generic_and_triple_points() {
    let v = stdout_json(&trilin(&["classify", "--n", "5", "--lambda", "0,0,0"]));
    assert_eq!(v["stratum"], "NotInZ");
    assert_eq!(v["dim_tri"], 1);
    let v = stdout_json(&trilin(&["classify", "--n", "5", "--lambda", "-3,-2,-3"]));
    assert_eq!(v["stratum"], "Z3");
    assert_eq!(v["dim_tri"], 3);
}

#[test]
fn kernel_value_shape() {
    let v = stdout_json(&trilin(&[
        "coeff", "--n", "5", "--family", "K", "--lambda", "0,0,0",
    ]));
    assert_eq!(v["value"]["kind"], "exact");
    assert_eq!(v["value"]["q"], "1");
    assert_eq!(v["value"]["two_exp"], -12);
    assert_eq!(v["value"]["pi_half_exp"], 12);
    // non-half-integer coordinates fall back to numerics
    let v = stdout_json(&trilin(&[
        "coeff", "--n", "5", "--family", "K", "--lambda", "1/3,1/7,1/11",
    ]));
    assert_eq!(v["value"]["kind"], "numeric");
    assert_eq!(v["value"]["precision"], 256);
}

#[test]
fn solve_matches_table_value() {
    let v = stdout_json(&trilin(&[
        "solve", "--n", "5", "--k", "3", "--lambda1", "-2", "--lambda2", "-3",
    ]));
    assert_eq!(v["dim"], 3);
}

#[test]
fn exit_codes() {
    // dimension too small
    let out = trilin(&["classify", "--n", "3", "--lambda", "0,0,0"]);
    assert_eq!(out.status.code(), Some(3));
    // parse error
    let out = trilin(&["coeff", "--n", "5", "--family", "K", "--lambda", "x,y,z"]);
    assert_eq!(out.status.code(), Some(2));
    // constraint violation
    let out = trilin(&[
        "coeff", "--n", "5", "--family", "S", "--k", "0", "--lambda", "0,0,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // usage error from clap
    let out = trilin(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suite_passes_and_is_byte_stable() {
    let args = [
        "verify", "--suite", "bernstein", "--samples", "10", "--seed", "42",
    ];
    let a = trilin(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = trilin(&args);
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn table_csv_has_rows() {
    let out = trilin(&["table", "--n", "4", "--kmax", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("k,lambda1,lambda2"));
    assert!(lines.len() > 10);
}

#[test]
fn precision_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_trilin"))
        .env("TRILIN_PRECISION_BITS", "128")
        .args([
            "coeff", "--n", "5", "--family", "K", "--lambda", "1/3,1/7,1/11",
        ])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"]["precision"], 128);
}
