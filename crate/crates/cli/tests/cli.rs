use std::process::{Command, Output};

use serde_json::Value;

fn entropy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entropy")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = entropy(&all);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json report")
}

fn close(v: &Value, want: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - want).abs() <= tol
}

const H3: &str = "\
# ladder truncation with three rungs
vertex v0
vertex v1
vertex v2
vertex v3
edge e1 v0 -> {v1}
edge f1 v1 -> {v0}
edge e2 v1 -> {v2}
edge f2 v2 -> {v1}
edge e3 v2 -> {v3}
edge f3 v3 -> {v2}
";

#[test]
fn finite_rose3() {
    let v = json(&["finite", "--builtin", "rose:3", "--nmax", "8"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
    assert_eq!(v["rows"][7]["paths"], 6561);
    assert!(close(&v["summary"]["spectral_log_lambda"], 3f64.ln(), 1e-9));
    assert_eq!(v["summary"]["agreement"], true);
}

#[test]
fn finite_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h3.graph");
    std::fs::write(&path, H3).unwrap();
    let v = json(&["finite", "--file", path.to_str().unwrap()]);
    // 2cos(π/5) is the golden ratio
    let phi: f64 = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(close(&v["summary"]["spectral_log_lambda"], phi.ln(), 1e-9));
    assert_eq!(v["ok"], true);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.graph");
    std::fs::write(&path, "vertex a\nvertex b\nedge x a -> {a, c}\n").unwrap();
    let o = entropy(&["finite", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 3, column 17"), "{err}");
    std::fs::write(&path, "vertex a\nemitter {a}\n").unwrap();
    let o = entropy(&["finite", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 1"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&entropy(&["finite"])), 2);
    assert_eq!(code(&entropy(&["finite", "--builtin", "rose:2", "--file", "x"])), 2);
    assert_eq!(code(&entropy(&["verify", "nonsense"])), 2);
}

#[test]
fn slow_polynomial_growth_exits_3() {
    // five loops in a chain: λ = 1 but |p^n| grows like n^4
    let mut text = String::new();
    for v in ["a", "b", "c", "d", "e"] {
        text += &format!("vertex {v}\nedge l{v} {v} -> {v}\n");
    }
    for (s, t) in [("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")] {
        text += &format!("edge {s}{t} {s} -> {t}\n");
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.graph");
    std::fs::write(&path, text).unwrap();
    let o = entropy(&["finite", "--file", path.to_str().unwrap(), "--nmax", "10"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stdout).contains("agreement: false"));
}

#[test]
fn unknown_builtin_exits_1() {
    let o = entropy(&["finite", "--builtin", "nope:2"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope"));
}

#[test]
fn rowfinite_csv_columns() {
    let o = entropy(&["rowfinite", "--builtin", "ladder", "--budgets", "2..20", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("budget,entropy_lo,entropy_hi,running_sup"));
    let last: Vec<f64> = lines.last().unwrap().split(',').map(|x| x.parse().unwrap()).collect();
    assert_eq!(last[0], 20.0);
    // budget 20 is H_10: log(2cos(π/12))
    assert!((last[3] - (2.0 * (std::f64::consts::PI / 12.0).cos()).ln()).abs() < 1e-8);
}

#[test]
fn rowfinite_diverging_and_single_budget() {
    let v = json(&["rowfinite", "--builtin", "roses", "--budgets", "1,2,3,4,5,6"]);
    assert_eq!(v["summary"]["diverging"], true);
    assert!(close(&v["rows"][5]["running_sup"], 6f64.ln(), 1e-9));
    let v = json(&["rowfinite", "--builtin", "rose:3", "--budgets", "3"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn renewal_cover_doubles() {
    let v = json(&["cover", "--builtin", "renewal:3", "--nmax", "16"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 17);
    for (n, r) in rows.iter().enumerate() {
        assert_eq!(r["count"], 17u64 << n);
    }
    assert_eq!(v["summary"]["doubling"], true);
    let gap = v["summary"]["gap_to_log2"].as_f64().unwrap();
    assert!(gap <= 17f64.ln() / 16.0 + 1e-11);
    let v = json(&["cover", "--builtin", "renewal:1", "--nmax", "1"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert_eq!(v["rows"][0]["ratio"], Value::Null);
}

#[test]
fn word_cover_counts() {
    let v = json(&["cover", "--builtin", "rose:3", "--nmax", "10", "--depth", "2"]);
    for (n, r) in v["rows"].as_array().unwrap().iter().enumerate() {
        assert_eq!(r["count"], 3u64.pow(n as u32 + 2));
    }
    assert_eq!(code(&entropy(&["cover", "--builtin", "ladder", "--nmax", "3"])), 1);
}

#[test]
fn metric_first_difference() {
    let v = json(&["metric", "--builtin", "rose:2", "--eps", "3", "--nmax", "5"]);
    // ssep(n, 1/8) on rose-2 counts words of length n+1
    for (i, r) in v["rows"].as_array().unwrap().iter().enumerate() {
        assert_eq!(r["ssep"], 1u64 << (i + 2));
    }
}

#[test]
fn verify_suites_pass() {
    for suite in ["counterexamples", "sep-span", "metrics"] {
        let o = entropy(&["verify", suite]);
        assert_eq!(code(&o), 0, "{suite}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let v = json(&["verify", "cover-lemmas", "--samples", "8", "--seed", "5"]);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["holds"] == true));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "sep-span", "--seed", "9", "--samples", "30", "--format", "json"];
    let a = entropy(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_entropy")).args(args).env("DR_ENTROPY_THREADS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    let c = entropy(&with_out);
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&out).unwrap(), a.stdout);
}
