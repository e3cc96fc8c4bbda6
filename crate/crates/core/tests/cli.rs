use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn scratch(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("isospec-cli-{}-{tag}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isospec")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const K4: &str = r#"{"vertices": 4, "arcs": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]], "undirected": true}"#;
const C4: &str = r#"{"vertices": ["a","b","c","d"], "arcs": [["a","b"],["b","c"],["c","d"],["d","a"]], "undirected": true}"#;
const C5: &str = r#"{"vertices": 5, "arcs": [[0,1],[1,2],[2,3],[3,4],[4,0]], "undirected": true}"#;
const C6: &str = r#"{"vertices": 6, "arcs": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]], "undirected": true}"#;
const K2: &str = r#"{"vertices": 2, "arcs": [[0,1]], "undirected": true}"#;

#[test]
fn iso_on_k4() {
    let d = scratch("iso");
    let k4 = write(&d, "k4.json", K4);
    let out = run(&["iso", k4.to_str().unwrap(), "-n", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "isospec-report/1");
    assert_eq!(v["data"]["iota"], "8/9");
    assert_eq!(v["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn float_backend_agrees() {
    let d = scratch("float");
    let k4 = write(&d, "k4.json", K4);
    let out = run(&["iso", k4.to_str().unwrap(), "-n", "3", "--json", "--float"]);
    let v = json(&out);
    let x: f64 = v["data"]["iota"].as_str().unwrap().parse().unwrap();
    assert!((x - 8.0 / 9.0).abs() < 1e-12);
}

#[test]
fn supergeometric_c4() {
    let d = scratch("sg");
    let c4 = write(&d, "c4.json", C4);
    let out = run(&["supergeometric", c4.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["supergeometric"], true);
}

#[test]
fn nohom_odd_cycle_onto_k2() {
    let d = scratch("nohom");
    let (c5, k2) = (write(&d, "c5.json", C5), write(&d, "k2.json", K2));
    let out = run(&["nohom", c5.to_str().unwrap(), k2.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["data"]["exists"], false);
}

#[test]
fn unsound_ratio_exits_one() {
    let d = scratch("ratio");
    let (c6, k2) = (write(&d, "c6.json", C6), write(&d, "k2.json", K2));
    let out = run(&["nohom", c6.to_str().unwrap(), k2.to_str().unwrap(), "--ratio", "0", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["data"]["exists"], true);
}

#[test]
fn compare_c6_onto_k2() {
    let d = scratch("compare");
    let (c6, k2) = (write(&d, "c6.json", C6), write(&d, "k2.json", K2));
    let map = write(&d, "map.json", r#"{"map": {"0": 0, "1": 1, "2": 0, "3": 1, "4": 0, "5": 1}}"#);
    let out = run(&[
        "compare",
        c6.to_str().unwrap(),
        k2.to_str().unwrap(),
        "--map",
        map.to_str().unwrap(),
        "--check",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["data"]["class"], "onto_edge");
    assert_eq!(v["data"]["constants"]["factor_upper"], "1");
}

#[test]
fn bad_input_exits_two() {
    let d = scratch("bad");
    let bad = write(&d, "bad.json", r#"{"vertices": 2, "arcs": [[0, 5]]}"#);
    assert_eq!(run(&["spectrum", bad.to_str().unwrap()]).status.code(), Some(2));
    let sink = write(&d, "sink.json", r#"{"vertices": 2, "arcs": [[0, 1]]}"#);
    assert_eq!(run(&["spectrum", sink.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", d.join("missing.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let d = scratch("bytes");
    let c4 = write(&d, "c4.json", C4);
    let args = ["cheeger", c4.to_str().unwrap(), "-n", "3", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn complete_graph_probe_reports_discrepancy() {
    let out = run(&["probe", "complete-graphs", "--sweep", "3..4", "--json"]);
    let v = json(&out);
    let f = &v["findings"][0];
    assert_eq!(f["holds"], false);
    assert!(f["detail"].as_str().unwrap().starts_with("discrepancy"));
}
