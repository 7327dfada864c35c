use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn mforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mforge"))
        .args(args)
        .env_remove("MFORGE_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mforge-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn construct(kind: &str, params: &str, name: &str) -> PathBuf {
    let path = scratch(name);
    let out = mforge(&["construct", "--kind", kind, "--params", params, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn construct_then_query() {
    let fano = construct("pg", "n=3,q=2", "fano.json");
    let u24 = construct("uniform", "r=2,n=4", "u24.json");
    let line = construct("pg", "n=2,q=3", "line.json");

    let out = mforge(&["eps", "--matroid", fano.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["eps"], 7);
    assert_eq!(v["longest_line"], 3);

    let out = mforge(&["density", "--matroid", fano.to_str().unwrap(), "--q", "2"]);
    assert_eq!(stdout_json(&out)["q_dense"], false);

    let out = mforge(&["has-minor", "--host", fano.to_str().unwrap(), "--target", u24.to_str().unwrap()]);
    assert_eq!(stdout_json(&out)["found"], false);

    let out = mforge(&["iso", "--a", line.to_str().unwrap(), "--b", u24.to_str().unwrap()]);
    let v = stdout_json(&out);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["certificate"]["bijection"].as_array().unwrap().len(), 4);
}

#[test]
fn construct_to_stdout() {
    let out = mforge(&["construct", "--kind", "witness", "--params", "q=2,class=llambda,n=2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["kind"] == "linear" || v["kind"] == "bases");
}

#[test]
fn representability_queries() {
    let out = mforge(&["rep", "--kind", "spike", "--k", "3", "--q", "3", "--witness"]);
    let v = stdout_json(&out);
    assert_eq!(v["representable"], false);
    assert_eq!(v["witness"], Value::Null);

    let out = mforge(&["rep", "--kind", "swirl", "--k", "4", "--q", "7", "--witness"]);
    let v = stdout_json(&out);
    assert_eq!(v["representable"], true);
    assert_eq!(v["witness"]["group"], "multiplicative");

    let out = mforge(&["eventual-base", "--ell", "25", "--swirls", "4"]);
    let v = stdout_json(&out);
    assert_eq!(v["base"], 4);
    assert_eq!(v["certified"], false);
}

#[test]
fn verify_writes_jsonl() {
    let path = scratch("eventual.jsonl");
    let out = mforge(&["verify", "eventual-base", "--jobs", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&path).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["type"], "header");
    assert_eq!(lines[0]["suite"], "eventual-base");
    let summary = lines.last().unwrap();
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["pass"], true);
    assert_eq!(summary["cases"].as_u64().unwrap() as usize, lines.len() - 2);
}

#[test]
fn caps_flag_and_env() {
    let out = mforge(&["verify", "rank-axioms", "--caps", "max_ground=8,max_rank=3"]);
    assert_eq!(out.status.code(), Some(0));
    let header: Value = serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(header["caps"]["max_ground"], 8);

    let out = Command::new(env!("CARGO_BIN_EXE_mforge"))
        .args(["verify", "rank-axioms"])
        .env("MFORGE_CAPS", "max_rank=2")
        .output()
        .unwrap();
    let header: Value = serde_json::from_slice(out.stdout.split(|&b| b == b'\n').next().unwrap()).unwrap();
    assert_eq!(header["caps"]["max_rank"], 2);
}

#[test]
fn usage_and_schema_errors_exit_2() {
    assert_eq!(mforge(&["verify", "lemma7"]).status.code(), Some(2));
    assert_eq!(mforge(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mforge(&["construct", "--kind", "pg", "--params", "n=3"]).status.code(), Some(2));
    assert_eq!(mforge(&["rep", "--kind", "spike", "--k", "3", "--q", "6"]).status.code(), Some(2));

    let bad = scratch("bad.json");
    fs::write(&bad, r#"{"kind":"bases","rank":2,"n":4,"bases":[[0,1],[2,3]]}"#).unwrap();
    let out = mforge(&["eps", "--matroid", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema error"));
}
