#![allow(dead_code)]

use std::io::Write;
use std::process::{Command, Stdio};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn htk(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_htk"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn htk");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Runs `a`, then feeds its stdout to `b`.
pub fn pipe(a: &[&str], b: &[&str]) -> Run {
    let first = htk(a, "");
    assert_eq!(first.code, 0, "{}", first.stderr);
    htk(b, &first.stdout)
}

pub fn json(r: &Run) -> serde_json::Value {
    serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout))
}

/// Isotropic stiffness with Lamé constants λ = μ = 1.
pub fn isotropic_doc(convention: &str) -> String {
    let shear = if convention == "voigt" { 1 } else { 2 };
    format!(
        r#"{{"schema":"htk/1","kind":"elasticity","convention":"{convention}","matrix":[[3,1,1,0,0,0],[1,3,1,0,0,0],[1,1,3,0,0,0],[0,0,0,{shear},0,0],[0,0,0,0,{shear},0],[0,0,0,0,0,{shear}]]}}"#
    )
}

pub fn max_abs(v: &serde_json::Value) -> f64 {
    match v {
        serde_json::Value::Array(a) => a.iter().map(max_abs).fold(0.0, f64::max),
        serde_json::Value::Number(n) => n.as_f64().unwrap().abs(),
        _ => 0.0,
    }
}
