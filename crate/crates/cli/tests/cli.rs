use std::process::{Command, Output};

use serde_json::Value;

fn exa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exa"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = exa(&full);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

#[test]
fn count_triangles_in_k4() {
    let o = exa(&["count", "--host", "C~", "--pattern", "Bw"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "4");
    let (code, v) = json(&["count", "--host", "C~", "--pattern", "Bw"]);
    assert_eq!(code, 0);
    assert_eq!(v["copies"], 4);
}

#[test]
fn graph_from_file() {
    let dir = std::env::temp_dir().join(format!("exa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k4.g6");
    std::fs::write(&path, "# K4\nC~\n").unwrap();
    let arg = format!("@{}", path.display());
    let o = exa(&["count", "--host", &arg, "--pattern", "Bw"]);
    assert_eq!(stdout(&o).trim(), "4");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unique_partition_check() {
    let o = exa(&["mup", "--a", "6", "--b", "53", "--check", "3,3/13,13,13,13,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "unique=true");
    let o = exa(&["mup", "--a", "6", "--b", "53", "--check", "3,3/50,3"]);
    assert_eq!(stdout(&o).trim(), "unique=false");
    let (_, v) = json(&["mup", "--a", "2", "--b", "2"]);
    assert_eq!(v["value"], 3);
}

#[test]
fn mup_series_csv() {
    let o = exa(&["mup", "--series", "2", "--n-max", "12", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,c,mup,witness,delta_vs_formula"));
    assert_eq!(lines.count(), 10);
}

#[test]
fn oracle_outputs() {
    let (code, v) = json(&["oracle", "ex", "--n", "5", "--family", "clique:3"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 6);
    assert_eq!(v["complete"], true);
    assert!(v["witness_graph6"].is_string());
    let (_, v) = json(&["oracle", "exa", "--n", "6", "--k", "1", "--family", "matching:4"]);
    assert_eq!(v["value"], 4);
    let (_, v) = json(&[
        "oracle", "exa-set", "--n", "4", "--set", "0,1,2,3", "--family", "clique:3",
    ]);
    assert_eq!(v["value"], 5);
    let (_, v) = json(&["oracle", "exa-prime", "--n", "4", "--family", "trees+clique:3"]);
    assert_eq!(v["value"], 0);
    let (_, v) = json(&["oracle", "zeta", "--graph", "C~"]);
    assert_eq!(v["value"], 2);
    let (_, v) = json(&["oracle", "brouwer", "--n", "5"]);
    assert_eq!(v["value"], 5);
    let (_, v) = json(&["oracle", "exa", "--n", "3", "--k", "5", "--family", "clique:2"]);
    assert!(v["value"].is_null());
}

#[test]
fn constructions() {
    let (code, v) = json(&["construct", "klikk", "--n", "7", "--r", "3"]);
    assert_eq!(code, 0);
    assert_eq!((v["actual_edges"].as_u64(), v["ok"].as_bool()), (Some(11), Some(true)));
    let (_, v) = json(&["construct", "kab", "--a", "2", "--b", "2"]);
    assert_eq!(v["actual_edges"], 5);
    let (_, v) = json(&["construct", "star", "--n", "6", "--r", "3", "--k", "2"]);
    assert_eq!(v["actual_copies"], 2);
    let o = exa(&["construct", "triangle", "--n", "4", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn game_values() {
    let (code, v) = json(&["game", "L", "--n", "4", "--family", "star"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], 2);
    assert_eq!(v["complete"], true);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys.len(), 4);
    for k in ["value", "first_moves", "states_explored", "complete"] {
        assert!(keys.contains(&k));
    }
    let (_, v) = json(&["game", "x", "--n", "4", "--family", "kminus"]);
    assert_eq!(v["value"], 1);
    let (_, v) = json(&["game", "xprime", "--n", "4", "--family", "star"]);
    assert_eq!(v["value"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(exa(&["count", "--host", "C~"]).status.code(), Some(1));
    assert_eq!(exa(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        exa(&["count", "--host", "C!", "--pattern", "Bw"]).status.code(),
        Some(1)
    );
    assert_eq!(exa(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(exa(&["--help"]).status.code(), Some(0));
    let o = exa(&["game", "L", "--n", "5", "--family", "trees", "--max-states", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = exa(&["--budget", "0", "oracle", "ex", "--n", "8", "--family", "clique:2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_klikk() {
    let o = exa(&["verify", "--suite", "klikk", "--n-max", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn verify_json_independent_of_jobs() {
    let run = |jobs: &str| {
        let o = exa(&["--json", "--jobs", jobs, "verify", "--suite", "questioner"]);
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run("1"), run("8"));
    let (_, v) = json(&["verify", "--suite", "zeta"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["suite"], "zeta");
}
