use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn agforest(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agforest"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

const QUARTET: [&str; 2] = ["((a,b),(c,d));", "((a,c),(b,d));"];
const CYCLIC: [&str; 2] = ["(((a,b),c),d);", "(((c,d),a),b);"];

#[test]
fn identical_trees_need_no_cuts() {
    for mode in ["approx", "exact"] {
        let o = agforest(&["maf", "--t1", "((a,b),c);", "--t2", "((a,b),c);", "--mode", mode, "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["k"], 0);
        assert_eq!(v["forest"], serde_json::json!(["((a,b),c);"]));
    }
    let o = agforest(&["maaf", "--t1", "((a,b),c);", "--t2", "((a,b),c);", "--json"]);
    assert_eq!(json(&o)["k"], 0);
}

#[test]
fn exact_quartet() {
    let o = agforest(&["maf", "--t1", QUARTET[0], "--t2", QUARTET[1], "--mode", "exact", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["k"], 2);
    assert_eq!(v["components"], 3);
    assert_eq!(v["valid"], true);
    assert_eq!(v["withinBranchingBound"], true);
}

#[test]
fn approximate_quartet_within_ratio() {
    let v = json(&agforest(&["maf", "--t1", QUARTET[0], "--t2", QUARTET[1], "--json"]));
    assert!(v["k"].as_u64().unwrap() <= 8);
    assert_eq!(v["valid"], true);
}

#[test]
fn infeasible_budget_exits_one() {
    let o = agforest(&["maf", "--t1", QUARTET[0], "--t2", QUARTET[1], "--mode", "exact", "--max-k", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_newick_exits_two() {
    let o = agforest(&["maf", "--t1", "((a,b),c", "--t2", "(a,b,c);"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
    let o = agforest(&["maf", "--t1", "(a,b);", "--t2", "(a,c);"]);
    assert_eq!(o.status.code(), Some(2));
    let o = agforest(&["maf", "--t1", "/no/such/file", "--t2", "(a,c);"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn maaf_cyclic_instance() {
    let o = agforest(&["maaf", "--t1", CYCLIC[0], "--t2", CYCLIC[1], "--mode", "exact", "--dfvs", "exact", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    for key in ["components", "k", "mafSize", "dfvsWeight", "proper", "acyclic", "identityHolds"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["k"], 2);
    assert_eq!(v["mafSize"], 1);
    assert_eq!(v["acyclic"], true);
    assert_eq!(v["identityHolds"], true);
    assert_eq!(v["hybridizationBound"], 2);
}

#[test]
fn maaf_always_acyclic() {
    for dfvs in ["exact", "greedy"] {
        for seed in 0..5 {
            let seed = seed.to_string();
            let g = json(&agforest(&["gen", "--n", "9", "--moves", "3", "--seed", &seed, "--json"]));
            let (t1, t2) = (g["t1"].as_str().unwrap(), g["t2"].as_str().unwrap());
            let v = json(&agforest(&["maaf", "--t1", t1, "--t2", t2, "--dfvs", dfvs, "--json"]));
            assert_eq!(v["acyclic"], true);
        }
    }
}

#[test]
fn dump_dfvs_writes_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.txt");
    let o = agforest(&[
        "maaf",
        "--t1",
        CYCLIC[0],
        "--t2",
        CYCLIC[1],
        "--dump-dfvs",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l.starts_with("# weight ")));
    assert!(text.lines().any(|l| !l.starts_with('#')));
}

#[test]
fn validate_verdicts() {
    let ok = agforest(&["validate", "--t1", QUARTET[0], "--t2", QUARTET[1], "--forest", "(a,b); c; d;"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = agforest(&["validate", "--t1", QUARTET[0], "--t2", QUARTET[1], "--forest", "(a,b); (c,d);", "--json"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    assert_eq!(v["agreementForest"], false);
    assert!(v["violation"].as_str().unwrap().contains("above {a,c}"));
}

#[test]
fn validate_reports_cycles() {
    let args = ["validate", "--t1", CYCLIC[0], "--t2", CYCLIC[1], "--forest", "(a,b); (c,d);"];
    let o = agforest(&[&args[..], &["--json"]].concat());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["acyclic"], false);
    assert_eq!(v["inheritanceGraph"]["edges"], serde_json::json!([[0, 1], [1, 0]]));
    let strict = agforest(&[&args[..], &["--require-acyclic"]].concat());
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn gen_is_reproducible_and_writes_files() {
    let a = agforest(&["gen", "--n", "12", "--moves", "2", "--seed", "9"]);
    let b = agforest(&["gen", "--n", "12", "--moves", "2", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("k <= 2\n"));
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("t1.nwk"), dir.path().join("t2.nwk"));
    let o = agforest(&[
        "gen",
        "--n",
        "6",
        "--moves",
        "0",
        "--t1",
        p1.to_str().unwrap(),
        "--t2",
        p2.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    let v = json(&agforest(&["maf", "--t1", path(&p1), "--t2", path(&p2), "--json"]));
    assert_eq!(v["k"], 0);
}

#[test]
fn gen_rejects_bad_sizes() {
    assert_eq!(agforest(&["gen", "--n", "1"]).status.code(), Some(2));
    assert_eq!(agforest(&["gen", "--n", "5", "--contraction", "1.5"]).status.code(), Some(2));
}

#[test]
fn one_move_bounds_the_oracle() {
    for seed in 0..10 {
        let seed = seed.to_string();
        let g = json(&agforest(&["gen", "--n", "6", "--moves", "1", "--seed", &seed, "--json"]));
        let (t1, t2) = (g["t1"].as_str().unwrap(), g["t2"].as_str().unwrap());
        let v = json(&agforest(&["oracle", "--t1", t1, "--t2", t2, "--json"]));
        assert!(v["k"].as_u64().unwrap() <= 1);
    }
}

#[test]
fn oracle_matches_exact_and_guards() {
    let v = json(&agforest(&["oracle", "--t1", CYCLIC[0], "--t2", CYCLIC[1], "--problem", "maaf", "--json"]));
    assert_eq!(v["k"], 2);
    let big = "(a,b,c,d,e,f,g,h,i);";
    assert_eq!(agforest(&["oracle", "--t1", big, "--t2", big]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["maaf", "--t1", CYCLIC[0], "--t2", CYCLIC[1], "--json"];
    assert_eq!(agforest(&args).stdout, agforest(&args).stdout);
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}
