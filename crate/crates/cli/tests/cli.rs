use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grouplen_core::harness::parse_corpus;
use serde_json::Value;

fn grouplen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grouplen"))
        .args(args)
        .env_remove("RUST_BACKTRACE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

/// Last column of the row for level `i` in the difference table.
fn table_difference(out: &str, i: usize) -> i64 {
    out.lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .find(|cols| cols.first() == Some(&i.to_string().as_str()))
        .and_then(|cols| cols.last()?.parse().ok())
        .expect("table row")
}

#[test]
fn construct_small_chains() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_string_lossy().into_owned();
    let o = grouplen(&["construct", "--sigma", "*", "--p", "2", "--n", "1", "--out", &out_dir]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(table_difference(&stdout(&o), 1), 1);

    let o = grouplen(&["construct", "--sigma", "*", "--p", "2", "--n", "2", "--out", &out_dir]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(table_difference(&stdout(&o), 2), 2);

    let specs = parse_corpus(&fs::read_to_string(dir.path().join("chain_p2_n2.grp")).unwrap()).unwrap();
    let names: Vec<&str> = specs.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, ["G_1", "G_2", "G_3", "M_1", "M_2"]);
    let orders: Vec<u128> = specs.iter().map(|s| s.group().unwrap().order()).collect();
    assert_eq!(orders, [2, 6, 150, 3, 75]);

    let prov: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("chain_p2_n2.json")).unwrap()).unwrap();
    assert_eq!(prov["primes"], serde_json::json!([2, 3, 5]));
    assert_eq!(prov["levels"][1]["difference"], 2);
}

#[test]
fn construct_rejects_composite_p() {
    let dir = tempfile::tempdir().unwrap();
    let o = grouplen(&["construct", "--p", "4", "--n", "1", "--out", &dir.path().to_string_lossy()]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("4 is not prime"), "{}", stderr(&o));
}

#[test]
fn verify_small_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "g.grp",
        "group S4\ndegree 4\ngen (1,2,3,4)\ngen (1,2)\nend\n\ngroup One\ndegree 1\nend\n",
    );
    let cfg = write(dir.path(), "cfg.json", r#"{"chain_n": 0, "primes": [2, 3]}"#);
    let report = dir.path().join("r.json");
    let o = grouplen(&["verify", &file, "--config", &cfg, "--out", &report.to_string_lossy()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["summary"]["fail"], 0);
    assert_eq!(r["summary"]["groups"], 2);
    assert_eq!(r["config"]["primes"], serde_json::json!([2, 3]));
    assert!(r["tool_version"].is_string());
    assert_eq!(r["summary"]["differences"]["maximal.h"]["2"], 3);
}

#[test]
fn verify_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "g.grp", "group A4\ndegree 4\ngen (1,2,3)\ngen (1,2)(3,4)\nend\n");
    let cfg = write(dir.path(), "cfg.json", r#"{"chain_n": 0}"#);
    let a = grouplen(&["verify", &file, "--config", &cfg]);
    let b = grouplen(&["verify", &file, "--config", &cfg]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_reports_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "g.grp", "group S4\ndegree 4\ngen (1,2,3,4)\ngen (1,2)\nend\n");
    let o = grouplen(&["analyze", &file, "--formation", "N", "--primes", "2,3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r[0]["lengths"]["h"], 3);
    assert_eq!(r[0]["lengths"]["h_star"], 3);
    assert_eq!(r[0]["fitting"]["order"], 4);
    assert_eq!(r[0]["residuals"][0]["residual"]["order"], 12);
}

#[test]
fn parse_errors_are_positioned() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "bad.grp", "group X\ndegree 3\ngen (1,2,2)\nend\n");
    let o = grouplen(&["analyze", &file]);
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(err.contains("line 3") && err.contains("repeated point in cycle"), "{err}");
}

#[test]
fn bundled_corpus_is_printed() {
    let o = grouplen(&["corpus"]);
    assert!(o.status.success());
    assert!(parse_corpus(&stdout(&o)).unwrap().len() >= 40);
}
