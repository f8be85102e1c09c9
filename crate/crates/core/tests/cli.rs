use std::io::Write;

use qappell::cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &str) -> Outcome {
    run(std::iter::once("qappell").chain(args.split_whitespace()))
}

#[test]
fn bernoulli_degree_one_table() {
    let out = cli("table --family bernoulli --n 1 --q 1/2 --u 1");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(doc["n"], 1);
    // B_1 = x - 1/[2]_q with [2]_{1/2} = 3/2
    let csv = cli("table --family bernoulli --n 1 --q 1/2 --u 1 --format csv");
    assert_eq!(csv.stdout, "ex,ey,ez,ew,ea,coeff\n0,0,0,0,0,-2/3\n1,0,0,0,0,1\n");
}

#[test]
fn unit_family_is_deformed_monomial() {
    // with base 1, P_3(x, y; 2) = (x + y)^3 deformed; the y^3 coefficient is u^3 = 8
    let out = cli("table --family custom --base 1 --n 3 --q 1/2 --u 2 --vars xy --format csv");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.lines().any(|l| l == "0,3,0,0,0,8"), "{}", out.stdout);
}

#[test]
fn eval_points() {
    let out = cli("eval --family bernoulli --n 1 --q 1/2 --at x=0");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "-2/3");
    let out = cli("eval --family custom --base 1 --n 2 --q 1/2 --u 1/2 --at x=1");
    assert_eq!(out.stdout.trim(), "1/2");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "table --family bernoulli --n 2 --q 0.5",
        "table --family bernoulli --n 2 --q -1",
        "table --family bernoulli --n 2 --vars xyz",
        "table --family bernoulli --n 2 --vars x --quasi",
        "eval --family bernoulli --n 2 --at y=1",
        "eval --family bernoulli --n 2 --vars xy --at x=1",
        "verify --suite nosuch",
        "frobnicate",
    ] {
        assert_eq!(cli(args).code, 2, "{args}");
    }
}

#[test]
fn degenerate_family_exits_3() {
    let out = cli("table --family genocchi --alpha -1 --n 2");
    assert_eq!(out.code, 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn custom_base_from_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"["1", "1/2", "1/3"]"#).unwrap();
    let path = f.path().to_str().unwrap();
    let from_file = cli(&format!("table --family custom --base {path} --n 2 --q 2 --format csv"));
    let inline = cli("table --family custom --base 1,1/2,1/3 --n 2 --q 2 --format csv");
    assert_eq!(from_file.code, 0, "{}", from_file.stderr);
    assert_eq!(from_file.stdout, inline.stdout);
}

#[test]
fn grid_files() {
    let mut empty = tempfile::NamedTempFile::new().unwrap();
    write!(empty, r#"{{"q": [], "u": ["1"]}}"#).unwrap();
    let out = cli(&format!("verify --suite qcore --grid {}", empty.path().to_str().unwrap()));
    assert_eq!(out.code, 2);

    let mut ok = tempfile::NamedTempFile::new().unwrap();
    write!(ok, r#"{{"q": ["2"], "u": ["0", "q"]}}"#).unwrap();
    let out = cli(&format!("verify --suite setalgebra --max-n 3 --grid {}", ok.path().to_str().unwrap()));
    assert_eq!(out.code, 0, "{}", out.stdout);
    let doc: Value = serde_json::from_str(&out.stdout).unwrap();
    let suite = &doc["suites"][0];
    assert_eq!(suite["excluded"].as_array().unwrap().len(), 1);
    assert_eq!(suite["reports"].as_array().unwrap().len(), 1);
}
