use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn nagata(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nagata"))
        .args(args)
        .env_remove("NAGATA_FORMAT")
        .output()
        .expect("run nagata")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn cluster_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn unload_on_chain_cluster() {
    let chain = nagata(&["chain", "3", "3"]);
    let file = cluster_file(&String::from_utf8(chain.stdout).unwrap());
    let path = file.path().to_str().unwrap();

    let report = json(&nagata(&["unload", "--cluster", path, "1,1,1"]));
    assert_eq!(report["final"], serde_json::json!([2, 0, 0]));
    assert_eq!(report["steps"].as_array().unwrap().len(), 1);

    let report = json(&nagata(&["unload", "--cluster", path, "2,1,1", "--strategy", "unit-steps"]));
    assert_eq!(report["final"], report["initial"]);
    assert!(report["steps"].as_array().unwrap().is_empty());
}

#[test]
fn malformed_cluster_exits_2() {
    let file = cluster_file(r#"{"r": 2, "prox": [[1, 2]]}"#);
    let out = nagata(&["unload", "--cluster", file.path().to_str().unwrap(), "1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let file = cluster_file(r#"{"r": 3, "prox": [[2, 1]]}"#);
    let out = nagata(&["unload", "--cluster", file.path().to_str().unwrap(), "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_sorts_and_reports_permutation() {
    let sorted = json(&nagata(&["bound", "2,1,1,1,1"]));
    assert_eq!(sorted["bound"], 3);
    assert_eq!(sorted["certificate"]["certified"], true);

    let unsorted = json(&nagata(&["bound", "1,1,1,1,2"]));
    assert_eq!(unsorted["permutation"], serde_json::json!([5, 1, 2, 3, 4]));
    assert_eq!(unsorted["trace"], sorted["trace"]);
    assert_eq!(unsorted["certificate"], sorted["certificate"]);

    let small = json(&nagata(&["bound", "1,1,1"]));
    assert_eq!(small["bound"], 2);
    assert_eq!(small["certificate"]["certified"], true);

    assert_eq!(nagata(&["bound", "2,-1"]).status.code(), Some(2));
    assert_eq!(nagata(&["bound", "2,x"]).status.code(), Some(2));
}

#[test]
fn corollary_table() {
    let rows = json(&nagata(&["corollary", "10..15"]));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|row| row["threshold"] == 3 && row["verified"]["value"] == true));

    let out = nagata(&["--format", "csv", "corollary", "10..15"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 7);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(1) == Some("3")));

    assert_eq!(nagata(&["corollary", "9..12"]).status.code(), Some(2));
}

#[test]
fn analytic_reports_links() {
    let report = json(&nagata(&["analytic", "10"]));
    let link = |id: &str| {
        report["links"]
            .as_array()
            .unwrap()
            .iter()
            .find(|l| l["id"] == id)
            .unwrap()
            .clone()
    };
    assert_eq!(link("g")["holds"]["value"], true);
    assert_eq!(link("g")["holds"]["certified"], true);
    assert!(link("c")["lhs"]["exact"].as_str().unwrap().contains('/'));

    let report = json(&nagata(&["analytic", "16"]));
    let failed: Vec<&str> = report["links"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|l| l["holds"]["value"] == false)
        .map(|l| l["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["b"]);

    assert_eq!(nagata(&["analytic", "9"]).status.code(), Some(2));
    assert_eq!(nagata(&["analytic", "10", "--precision", "8"]).status.code(), Some(4));
}

#[test]
fn oracle_is_deterministic() {
    let args = ["oracle", "1,1,1,1,1,1,1,1,1,1", "--seed", "7"];
    let first = json(&nagata(&args));
    assert_eq!(first["alpha_hat"], 4);
    assert_eq!(first, json(&nagata(&args)));
    assert_eq!(
        nagata(&["oracle", "3,3,3", "--d-max", "2"]).status.code(),
        Some(3)
    );
}

#[test]
fn scan_quasi_homogeneous_family() {
    let args = ["scan", "--r", "10..15", "--nu", "1..3", "--mu-factor", "3"];
    let rows = json(&nagata(&args));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 18);
    assert!(rows.iter().all(|row| row["certified"] == true));
    assert_eq!(rows[0]["m"][0], 3);
    assert_eq!(rows.last().unwrap()["r"], 15);
    assert_eq!(json(&nagata(&args)), json(&nagata(&args)));

    let out = Command::new(env!("CARGO_BIN_EXE_nagata"))
        .args(args)
        .env("NAGATA_FORMAT", "csv")
        .output()
        .unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("r,mu,nu,m,sum,bound,certified"));
    assert_eq!(text.lines().count(), 19);
}

#[test]
fn scan_boundary_probes_and_lists() {
    let rows = json(&nagata(&["scan", "--r", "10", "--nu", "1..2", "--offset", "-1"]));
    assert_eq!(rows[0]["mu"], 2);
    assert_eq!(rows[1]["mu"], 5);

    let rows = json(&nagata(&["scan", "--system", "1,1,1,1,2", "--system", "1,1", "--oracle"]));
    let rows = rows.as_array().unwrap();
    assert_eq!(rows[0]["m"], serde_json::json!([1, 1]));
    assert_eq!(rows[1]["bound"], 3);
    assert_eq!(rows[1]["alpha_hat"], 3);
}

#[test]
fn scan_errors() {
    assert_eq!(nagata(&["scan", "--r", "12..10", "--nu", "1"]).status.code(), Some(2));
    assert_eq!(
        nagata(&["scan", "--r", "10..20", "--nu", "1..100", "--cap", "10"]).status.code(),
        Some(3)
    );
    assert_eq!(nagata(&["scan"]).status.code(), Some(2));
}
