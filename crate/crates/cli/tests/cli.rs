use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn colnum(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_colnum"))
        .current_dir(dir)
        .env_remove("COLNUM_CAP")
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn path_edges(n: usize) -> String {
    let mut s = format!("{n} {}\n", n - 1);
    for i in 0..n - 1 {
        s += &format!("{i} {}\n", i + 1);
    }
    s
}

#[test]
fn eval_reports_requested_values() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "path.g", &path_edges(4));
    write(dir.path(), "natural.ord", "0 1 2 3\n");
    write(dir.path(), "k4.g", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    write(dir.path(), "any.ord", "2 0 3 1\n");

    let out = colnum(dir.path(), &["eval", "path.g", "natural.ord", "--r", "2", "--kind", "strong"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["reports"][0]["value"], 2);

    let out = colnum(dir.path(), &["eval", "k4.g", "any.ord", "--r", "1", "--kind", "weak"]);
    assert_eq!(json(&out)["reports"][0]["value"], 4);

    let out = colnum(dir.path(), &["eval", "path.g", "natural.ord", "--r", "1,inf"]);
    assert_eq!(json(&out)["reports"].as_array().unwrap().len(), 6);
}

#[test]
fn malformed_input_exits_2_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.g", "3 2\n0 1\n1 7\n");
    write(dir.path(), "o.ord", "0 1 2\n");
    let out = colnum(dir.path(), &["eval", "bad.g", "o.ord"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    write(dir.path(), "ok.g", "3 1\n0 1\n");
    write(dir.path(), "short.ord", "0 1\n");
    assert_eq!(colnum(dir.path(), &["eval", "ok.g", "short.ord"]).status.code(), Some(2));
    assert_eq!(colnum(dir.path(), &["eval", "missing.g", "o.ord"]).status.code(), Some(2));
}

#[test]
fn exact_values_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c5.g", "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n");
    write(dir.path(), "p4.g", &path_edges(4));
    write(dir.path(), "big.g", &path_edges(50));

    let out = colnum(dir.path(), &["exact", "c5.g", "--r", "2", "--kind", "strong"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["value"], 3);

    let out = colnum(dir.path(), &["exact", "p4.g", "--td"]);
    assert_eq!(json(&out)["treedepth"], 3);

    assert_eq!(colnum(dir.path(), &["exact", "big.g"]).status.code(), Some(3));
}

#[test]
fn cap_from_environment_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p12.g", &path_edges(12));
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_colnum"));
        cmd.current_dir(dir.path()).env_remove("COLNUM_CAP");
        if let Some(v) = env {
            cmd.env("COLNUM_CAP", v);
        }
        cmd.args(["exact", "p12.g", "--kind", "weak"]).args(extra).output().unwrap().status.code()
    };
    assert_eq!(run(None, &[]), Some(3));
    assert_eq!(run(Some("12"), &[]), Some(0));
    assert_eq!(run(Some("12"), &["--cap", "8"]), Some(3));
}

#[test]
fn uniform_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "p3.json",
        r#"{"n": 3, "layers": [{"edges": [[0,1],[1,2]], "r": 1, "a": 1, "sigma": [0,1,2]}]}"#,
    );
    let out = colnum(dir.path(), &["uniform", "p3.json", "--order-out", "star.ord", "--audit"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["report"]["sigma_star"], serde_json::json!([0, 1, 2]));
    assert_eq!(rep["report"]["ok"], true);
    assert_eq!(fs::read_to_string(dir.path().join("star.ord")).unwrap().trim(), "0 1 2");
}

#[test]
fn uniform_graph_modes() {
    let dir = tempfile::tempdir().unwrap();
    let edges = "10 13\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n8 9\n0 5\n2 7\n1 8\n3 9\n";
    write(dir.path(), "g.g", edges);
    write(dir.path(), "p4.g", &path_edges(4));

    let rep = json(&colnum(dir.path(), &["uniform", "g.g", "--dyadic", "--sigma", "exact"]));
    assert_eq!(rep["report"]["k"], 3);
    assert_eq!(rep["report"]["weights"], serde_json::json!([4, 2, 1]));
    assert_eq!(rep["report"]["bounds"].as_array().unwrap().len(), 3);
    assert_eq!(rep["report"]["ok"], true);

    let rep = json(&colnum(dir.path(), &["uniform", "g.g", "--eps", "1.0", "--sigma", "degeneracy"]));
    assert_eq!(rep["report"]["k"], 2);
    assert_eq!(rep["report"]["ok"], true);

    let out = colnum(dir.path(), &["uniform", "g.g", "g.g", "--multi", "--r", "1,2", "--tie-break", "seeded:9"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["weights"], serde_json::json!([1, 1]));

    let out = colnum(dir.path(), &["uniform", "g.g", "p4.g", "--multi", "--r", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = colnum(dir.path(), &["uniform", "g.g", "--dyadic", "--sigma", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn two_radii_writes_graph_and_labels() {
    let dir = tempfile::tempdir().unwrap();
    let out = colnum(dir.path(), &["example21", "4", "4", "2", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["vertices"], 124);
    let graph = fs::read_to_string(dir.path().join("two_radii_4_4_2_4.g")).unwrap();
    assert!(graph.starts_with("124 "));
    let labels: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("two_radii_4_4_2_4.labels.json")).unwrap()).unwrap();
    assert_eq!(labels["labels"].as_array().unwrap().len(), 124);
    assert_eq!(labels["labels"][0], "z_1^1");

    assert_eq!(colnum(dir.path(), &["example21", "3", "4", "2", "4"]).status.code(), Some(2));
}

#[test]
fn two_radii_verification_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = colnum(
        dir.path(),
        &["example21", "4", "8", "2", "4", "--verify", "--samples", "100", "--seed", "7"],
    );
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["facts"]["ok"], true);
    assert_eq!(rep["claims"]["ok"], true);
    assert_eq!(rep["claims"]["samples"].as_array().unwrap().len(), 100);
}

#[test]
fn verify_single_suites_and_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let out = colnum(dir.path(), &["verify", "sandwich"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["criteria"][0]["id"], 2);
    assert_eq!(rep["passed"], true);
    assert!(rep.get("generated_at").is_some());

    let rep = json(&colnum(dir.path(), &["verify", "widths", "--no-timestamp"]));
    assert_eq!(rep["criteria"][0]["id"], 3);
    assert!(rep.get("generated_at").is_none());
    let alias = json(&colnum(dir.path(), &["verify", "prop11", "--no-timestamp"]));
    assert_eq!(alias["criteria"], rep["criteria"]);

    assert_eq!(colnum(dir.path(), &["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn pretty_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p4.g", &path_edges(4));
    let out = colnum(dir.path(), &["exact", "p4.g", "--tw", "--pretty", "--out", "rep.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("treewidth 1"));
    let saved: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("rep.json")).unwrap()).unwrap();
    assert_eq!(saved["treewidth"], 1);
}
