use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clusterclass"))
        .args(args)
        .env_remove("CLUSTERCLASS_CANON_GUARD")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn seed_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn big_quiver_file_rank_over_q() {
    let built = run(&["catalog", "build", "BigQuiver"]);
    assert!(built.status.success());
    let mut seed = json(&built);
    seed.as_object_mut().unwrap().remove("family");
    let file = seed_file(&seed.to_string());
    let out = run(&["--ring", "Q", "rank", "--seed", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["rank"], 5);
    assert_eq!(v["t"], 13);
    assert_eq!(v["factorial"], false);
    let rs: Vec<u64> = v["blocks"].as_array().unwrap().iter().map(|b| b["r"].as_u64().unwrap()).collect();
    assert_eq!(rs, [0, 2, 0, 1, 2]);
}

#[test]
fn mutation_twice_is_identity() {
    let seed = r#"{"n":3,"m":1,"b":[[0,2,0],[-1,0,3],[0,-1,0],[1,-2,5]]}"#;
    let out = run(&["mutate", "--seed", seed, "--at", "2", "--at", "2"]);
    assert!(out.status.success());
    let expected: Value = serde_json::from_str(seed).unwrap();
    assert_eq!(json(&out), expected);
}

#[test]
fn catalog_verify_passes_over_algclosed() {
    let out = run(&["--ring", "algclosed", "catalog", "verify", "--max", "6"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    assert!(v["entries"].as_array().unwrap().len() > 20);
}

#[test]
fn library_errors_are_json_with_exit_one() {
    let out = run(&["--ring", "Q", "rank", "--seed", "catalog:Isolated"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["code"], "isolated_index_over_field");
    assert_eq!(v["error"]["detail"]["index"], 1);

    let out = run(&["ledger", "--seed", "catalog:Markov"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "not_acyclic");

    let out = run(&["validate", "--seed", r#"{"n":2,"m":0,"b":[[0,1],[1,0]]}"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"]["code"].is_string());

    let out = run(&["rank", "--seed", "/nonexistent/seed.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["code"], "io_error");
}

#[test]
fn normalize_isolated_flag_freezes_isolated_indices() {
    let out = run(&["--ring", "Q", "--normalize-isolated", "rank", "--seed", "catalog:Isolated"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["rank"], 1);
    let out = run(&["rank", "--seed", "catalog:Isolated"]);
    assert_eq!(json(&out)["rank"], 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["--ring", "F7", "rank", "--seed", "catalog:A:3"]).status.code(), Some(2));
    assert_eq!(run(&["mutate", "--seed", "catalog:A:3", "--at", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--ring", "custom:4", "ledger", "--seed", "catalog:D~:5"];
    let first = run(&args);
    assert!(first.status.success());
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, first.stdout);
    }
}

#[test]
fn validate_round_trips_seed() {
    let seed = r#"{"b":[[0,-1],[2,0],[4,-5]],"m":1,"n":2}"#;
    let file = seed_file(seed);
    let out = run(&["validate", "--seed", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let mut v = json(&out);
    assert_eq!(v["symmetrizer"], serde_json::json!([2, 1]));
    v.as_object_mut().unwrap().remove("symmetrizer");
    assert_eq!(v.to_string(), seed);
}

#[test]
fn text_format_renders_fields() {
    let out = run(&["--format", "text", "rank", "--seed", "catalog:A:3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("rank: 1"));
    assert!(serde_json::from_str::<Value>(&text).is_err());
}

#[test]
fn canonical_guard_comes_from_environment() {
    let bin = env!("CARGO_BIN_EXE_clusterclass");
    let bad = Command::new(bin)
        .args(["class", "--seed", "catalog:Markov"])
        .env("CLUSTERCLASS_CANON_GUARD", "x")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let tight = Command::new(bin)
        .args(["class", "--seed", "catalog:A:4"])
        .env("CLUSTERCLASS_CANON_GUARD", "2")
        .output()
        .unwrap();
    assert_eq!(tight.status.code(), Some(1));
    assert_eq!(json(&tight)["error"]["code"], "too_large_for_canonicalization");
    let ok = run(&["class", "--seed", "catalog:Markov"]);
    assert!(ok.status.success());
    let v = json(&ok);
    assert_eq!(v["complete"], true);
}
