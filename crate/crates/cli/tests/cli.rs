//! Runs the built `genus` binary end to end.

use std::process::{Command, Output};

use serde_json::Value;

fn genus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genus")).args(args).env_remove("GENUS_CACHE_DIR").output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = genus(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let v: Value = serde_json::from_str(&stdout(args)).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

fn has_entry(table: &Value, g: u64, ty: &[u64], count: u64) -> bool {
    table["entries"].as_array().unwrap().iter().any(|e| {
        e["g"] == g && e["count"] == count && e["type"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).eq(ty.iter().copied())
    })
}

#[test]
fn table_examples() {
    let v = json(&["table", "--kind", "permutation", "--n", "3"]);
    assert!(has_entry(&v["tables"][0], 1, &[3], 1));
    let v = json(&["table", "--kind", "partition", "--n", "4"]);
    assert!(has_entry(&v["tables"][0], 1, &[2, 2], 1));
    let v = json(&["table", "--kind", "partition", "--n", "1"]);
    let entries = v["tables"][0]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert!(has_entry(&v["tables"][0], 0, &[1], 1));
}

#[test]
fn moments_examples() {
    let v = json(&["moments", "--kind", "permutation", "--preset", "factorials", "--g", "1", "--n", "3..9"]);
    let values: Vec<&str> = v["records"].as_array().unwrap().iter().map(|r| r["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1", "10", "70", "420", "2310", "12012", "60060"]);
    let v = json(&["moments", "--kind", "partition", "--g", "2", "--n", "6"]);
    assert_eq!(v["records"][0]["poly"], "k3^2");
    assert_eq!(v["records"][0]["g"], 2);
    let v = json(&["moments", "--kind", "permutation", "--preset", "harer-zagier", "--g", "2", "--n", "8"]);
    assert_eq!(v["records"][0]["value"], "21");
    let v = json(&["moments", "--kind", "perm", "--g", "1", "--n", "4"]);
    assert_eq!(v["records"][0]["poly"], "4*k1*k3 + k2^2 + 5*k4");
    let v = json(&["moments", "--kind", "perm", "--custom", "1=1/2,2=1", "--g", "0", "--n", "2"]);
    assert_eq!(v["records"][0]["value"], "5/4");
}

#[test]
fn cylinder_examples() {
    let v = json(&["cylinder", "--kind", "part", "--i", "1", "--j", "3"]);
    let want = "k1_3 + 3*k1*k1_2 + 3*k2*k1_1 + 3*k1^2*k1_1 + k4 + 3*k1*k3 + 3*k1^2*k2 + 3*k2^2";
    let want: genus_core::algebra::KappaPolynomial = want.parse().unwrap();
    assert_eq!(v["records"][0]["poly"], want.to_string());
    let v = json(&["cylinder", "--kind", "perm", "--i", "1", "--j", "1"]);
    assert_eq!(v["records"][0]["poly"], "k1_1 + k2");
    let v = json(&["cylinder", "--kind", "part", "--i", "2", "--j", "2", "--set-second-order-zero"]);
    assert_eq!(v["records"][0]["poly"], "4*k1^2*k2 + 4*k1*k3 + 2*k2^2 + k4");
    let v = json(&["cylinder", "--kind", "part", "--i", "1", "--j", "1", "--dump"]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0], serde_json::json!([2, 2, "k1_1 + k2"]));
}

#[test]
fn series_records() {
    let v = json(&["series", "--kind", "partition", "--g", "1", "--preset", "bell", "--n-max", "6"]);
    let coeffs: Vec<&str> = v["records"][0]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, ["0", "0", "0", "0", "1", "10", "70"]);
    assert_eq!(v["records"][0]["spec"], "bell");
    let text = stdout(&["series", "--kind", "perm", "--g", "1", "--preset", "stirling1", "--n-max", "4", "--format", "text"]);
    assert_eq!(text.trim(), "g=1 stirling1: 0, 0, 0, k, 5*k + 5*k^2");
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "--checks", "factorial-sum", "--n", "9"]);
    assert_eq!(v["passed"], true);
    let values = v["reports"][0]["values"].as_array().unwrap();
    assert_eq!(values.last().unwrap(), "n=9: 362880");
    let v = json(&["verify", "--checks", "bell-sum", "--n", "7"]);
    assert_eq!(v["reports"][0]["values"].as_array().unwrap().last().unwrap(), "n=7: 877");
}

#[test]
fn csv_and_text_formats() {
    let csv = stdout(&["moments", "--kind", "perm", "--g", "1", "--n", "4", "--format", "csv"]);
    assert_eq!(csv, "kind,g,n,monomial,coefficient\npermutation,1,4,k1*k3,4\npermutation,1,4,k2^2,1\npermutation,1,4,k4,5\n");
    let csv = stdout(&["table", "--kind", "partition", "--n", "2", "--format", "csv"]);
    assert_eq!(csv, "n,kind,g,type,count\n2,partition,0,1 1,1\n2,partition,0,2,1\n");
    let text = stdout(&["cylinder", "--kind", "perm", "--i", "1", "--j", "1", "--format", "text"]);
    assert_eq!(text, "i=1 j=1: k1_1 + k2\n");
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let uncached = stdout(&["table", "--kind", "partition", "--n", "5..6"]);
    let first = stdout(&["table", "--kind", "partition", "--n", "5..6", "--cache-dir", d]);
    assert!(dir.path().join("table-partition-n6.json").exists());
    let second = stdout(&["table", "--kind", "partition", "--n", "5..6", "--cache-dir", d]);
    assert_eq!(uncached, first);
    assert_eq!(first, second);
    // The environment variable selects the same directory.
    let out = Command::new(env!("CARGO_BIN_EXE_genus"))
        .args(["table", "--kind", "perm", "--n", "4"])
        .env("GENUS_CACHE_DIR", d)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("table-permutation-n4.json").exists());
    // A corrupted cache file is ignored and rewritten.
    let path = dir.path().join("table-partition-n5.json");
    let text = std::fs::read_to_string(&path).unwrap().replace("\"count\": 1,", "\"count\": 7,");
    std::fs::write(&path, text).unwrap();
    assert_eq!(stdout(&["table", "--kind", "partition", "--n", "5..6", "--cache-dir", d]), uncached);
}

#[test]
fn deterministic_output() {
    let args = ["moments", "--kind", "part", "--g", "0..2", "--n", "1..8", "--jobs", "3"];
    assert_eq!(stdout(&args), stdout(&args));
}

fn fails_with(args: &[&str], needle: &str) {
    let out = genus(args);
    assert!(!out.status.success(), "{args:?} should fail");
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.contains(needle), "{args:?}: {err}");
}

#[test]
fn error_paths() {
    fails_with(&["table", "--kind", "permutation", "--n", "10"], "exceeds the oracle limit 9");
    fails_with(&["table", "--kind", "partition", "--n", "6", "--oracle-limit", "5"], "exceeds the oracle limit 5");
    fails_with(&["moments", "--kind", "partition", "--g", "3", "--n", "8"], "unsupported genus 3");
    fails_with(&["moments", "--kind", "perm", "--g", "1", "--n", "6", "--cutoff", "4"], "cutoff 4 is smaller than the required 6");
    fails_with(&["cylinder", "--kind", "perm", "--i", "3", "--j", "3", "--cutoff", "5"], "cutoff 5");
    fails_with(&["verify", "--checks", "no-such-check"], "unknown check");
    fails_with(&["moments", "--kind", "perm", "--g", "1", "--n", "4", "--custom", "x=1"], "--custom index");
    fails_with(&["series", "--kind", "perm", "--g", "1", "--n-max", "4"], "--preset or --custom");
    fails_with(&["table", "--kind", "perm", "--n", "0"], "at least 1");
}
