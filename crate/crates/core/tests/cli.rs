use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn trl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trl")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    assert!(trl(&full).status.success());
    path
}

#[test]
fn gen_w_file() {
    let out = trl(&["gen", "--family", "w"]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"dims":[2,2,2],"entries":[[0,0,1,"1"],[0,1,0,"1"],[1,0,0,"1"]]}"#
    );
}

#[test]
fn gen_random_is_deterministic() {
    let args = [
        "gen",
        "--family",
        "random",
        "--dims",
        "2,2,2",
        "--coeff-range",
        "-2..2",
        "--seed",
        "7",
    ];
    let a = trl(&args);
    let b = trl(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = trl(&[
        "gen",
        "--family",
        "random",
        "--dims",
        "2,2,2",
        "--coeff-range",
        "-2..2",
        "--seed",
        "8",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gr_examples() {
    let dir = tempfile::tempdir().unwrap();
    let w = gen(dir.path(), "w.json", &["--family", "w"]);
    let i4 = gen(dir.path(), "i4.json", &["--family", "identity", "--params", "4"]);
    let m = gen(dir.path(), "m.json", &["--family", "matmul", "--params", "2,2,3"]);

    let v = json(&trl(&["gr", &w]));
    assert_eq!(v["schema"], "trl-1");
    assert_eq!(v["result"]["gr"], 2);
    assert_eq!(v["result"]["method"], "exact-axis-2");
    assert_eq!(json(&trl(&["gr", &i4]))["result"]["gr"], 4);
    assert_eq!(json(&trl(&["gr", &m]))["result"]["gr"], 4);
    assert_eq!(json(&trl(&["gr", &m, "--axis", "0"]))["result"]["gr"], 4);

    let v = json(&trl(&["gr", &w, "--method", "modular", "--primes", "101,103,107"]));
    assert_eq!(v["result"]["gr"], 2);
    assert_eq!(v["result"]["method"], "modular");
    assert_eq!(v["result"]["evidence"].as_array().unwrap().len(), 3);
    assert!(v["result"]["evidence"][0]["count"].is_string());
}

#[test]
fn ar_examples() {
    let dir = tempfile::tempdir().unwrap();
    let i1 = gen(dir.path(), "i1.json", &["--family", "identity", "--params", "1"]);
    let w = gen(dir.path(), "w.json", &["--family", "w"]);
    let zero = dir.path().join("zero.json");
    std::fs::write(&zero, r#"{"dims":[2,2,2],"entries":[]}"#).unwrap();

    let v = json(&trl(&["ar", &i1, "--prime", "5"]));
    assert_eq!(v["result"]["count"], "9");
    let ar = v["result"]["ar"].as_f64().unwrap();
    assert!((ar - (2.0 - 9f64.ln() / 5f64.ln())).abs() < 1e-12);

    for method in ["stratified", "bruteforce"] {
        let v = json(&trl(&["ar", &w, "--prime", "7", "--method", method]));
        assert_eq!(v["result"]["count"], "133");
        assert_eq!(v["result"]["method"], method);
    }
    let v = json(&trl(&["ar", zero.to_str().unwrap(), "--prime", "3"]));
    assert_eq!(v["result"]["ar"].as_f64().unwrap(), 0.0);
}

#[test]
fn scan_examples() {
    let dir = tempfile::tempdir().unwrap();
    let w = gen(dir.path(), "w.json", &["--family", "w"]);
    let v = json(&trl(&["scan", &w, "--primes", "2..47"]));
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 15);
    let ars: Vec<f64> = rows.iter().map(|r| r["ar"].as_f64().unwrap()).collect();
    assert!(ars.windows(2).all(|w| w[0] < w[1]));

    let i2 = gen(dir.path(), "i2.json", &["--family", "identity", "--params", "2"]);
    let v = json(&trl(&["scan", &i2, "--primes", "2..13"]));
    for r in v["result"]["rows"].as_array().unwrap() {
        let p = r["prime"].as_u64().unwrap();
        assert_eq!(r["count"], ((2 * p - 1) * (2 * p - 1)).to_string());
    }

    let m = gen(dir.path(), "m.json", &["--family", "matmul", "--params", "2,2,2"]);
    let v = json(&trl(&["scan", &m, "--primes", "2..31"]));
    let last = v["result"]["rows"].as_array().unwrap().last().unwrap()["ar"]
        .as_f64()
        .unwrap();
    assert!((last - 3.0).abs() < 0.15, "{last}");
}

#[test]
fn chain_examples() {
    let dir = tempfile::tempdir().unwrap();
    let w = gen(dir.path(), "w.json", &["--family", "w"]);
    let v = json(&trl(&["chain", &w]));
    let r = &v["result"];
    assert_eq!(
        (
            r["subrank_diag_lower"].as_u64(),
            r["gr"]["gr"].as_u64(),
            r["sr_upper"].as_u64()
        ),
        (Some(1), Some(2), Some(2))
    );
    assert_eq!(r["id"], "w");

    let m = gen(dir.path(), "m.json", &["--family", "matmul", "--params", "2,2,2"]);
    let v = json(&trl(&["chain", &m, "--primes", "3..7", "--workers", "2"]));
    let r = &v["result"];
    assert_eq!(r["gr"]["gr"], 3);
    assert_eq!(r["sr_upper"], 4);
    assert_eq!(r["matmul"]["gr_formula"], 3);
    assert_eq!(r["ar_samples"].as_array().unwrap().len(), 3);

    let h = gen(
        dir.path(),
        "h.json",
        &["--family", "hypergraph", "--params", "3", "--edges", "0,1,2"],
    );
    let v = json(&trl(&["chain", &h]));
    assert_eq!(v["result"]["subrank_diag_lower"], 2);
}

#[test]
fn worker_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let t = gen(
        dir.path(),
        "r.json",
        &["--family", "random", "--dims", "3,3,3", "--seed", "4"],
    );
    let strip = |mut v: Value| {
        v["wall_time_ms"] = Value::Null;
        v
    };
    let one = strip(json(&trl(&["scan", &t, "--primes", "2..11", "--workers", "1"])));
    let four = strip(json(&trl(&["scan", &t, "--primes", "2..11", "--workers", "4"])));
    assert_eq!(one, four);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let w = gen(dir.path(), "w.json", &["--family", "w"]);
    let m = gen(dir.path(), "m.json", &["--family", "matmul", "--params", "2,2,2"]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dims":[2,2,2],"entries":[[0,0,0,"1"],[0,0,0,"1"]]}"#).unwrap();
    let half = dir.path().join("half.json");
    std::fs::write(&half, r#"{"dims":[1,1,1],"entries":[[0,0,0,"1/2"]]}"#).unwrap();

    let code = |args: &[&str]| trl(args).status.code().unwrap();
    assert_eq!(code(&["gr", bad.to_str().unwrap()]), 2);
    assert_eq!(code(&["gr", "/nonexistent/t.json"]), 2);
    assert_eq!(code(&["ar", &w, "--prime", "9"]), 2);
    assert_eq!(code(&["ar", half.to_str().unwrap(), "--prime", "5"]), 2);
    assert_eq!(code(&["gr", &w, "--axis", "3"]), 2);
    assert_eq!(code(&["gen", "--family", "matmul", "--params", "2,2"]), 2);
    assert_eq!(code(&["gen", "--family", "identity", "--params", "0"]), 2);
    assert_eq!(code(&["gr", &m, "--max-pairs", "1"]), 3);
    assert_eq!(code(&["ar", &m, "--prime", "101", "--max-vectors", "10"]), 3);
    assert_eq!(code(&["ar", &m, "--prime", "101", "--method", "bruteforce"]), 3);

    let out = trl(&["gr", &m, "--max-pairs", "1"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}
