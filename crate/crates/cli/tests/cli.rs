use std::process::{Command, Output};

use serde_json::Value;

fn fpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpp")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json", "--no-timing"];
    all.extend_from_slice(args);
    let out = fpp(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

#[test]
fn fano_verify_passes() {
    let (code, v) = json(&["fano", "--verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], true);
    assert_eq!(v["command"], "fano");
    assert_eq!(v["version"], "1");
    assert!(v["wall_time"].is_null());
}

#[test]
fn fano_orbits() {
    let (_, v) = json(&["fano", "--orbits", "d8"]);
    assert_eq!(v["result"]["points"]["sizes"], serde_json::json!([1, 2, 4]));
    assert_eq!(v["result"]["lines"]["sizes"], serde_json::json!([1, 2, 4]));
    let (_, v) = json(&["fano", "--orbits", "d16"]);
    assert_eq!(v["result"]["elements"]["orbits"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["elements"]["sizes"], serde_json::json!([2, 4, 8]));
}

#[test]
fn building_counts() {
    let (code, v) = json(&["building", "--p", "2", "--radius", "1"]);
    assert_eq!(code, 0);
    assert_eq!((v["result"]["vertices"].as_u64(), v["result"]["triangles"].as_u64()), (Some(15), Some(21)));
    let (_, v) = json(&["building", "--p", "2", "--radius", "0"]);
    assert_eq!(v["result"]["vertices"], 1);
    let (code, v) = json(&["building", "--p", "3", "--radius", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["vertices"], 27);
}

#[test]
fn building_exports_and_fuzz() {
    let out = fpp(&["building", "--format", "dot", "--no-timing"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ball.json");
    let out = fpp(&["building", "--format", "json", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let ball: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(ball["edges"].as_array().unwrap().len(), 35);
    let (code, v) = json(&["--seed", "9", "building", "--fuzz", "50"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["fuzz"]["seed"], 9);
    assert_eq!(v["result"]["fuzz"]["passed"], 50);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(fpp(&["building", "--radius", "5"]).status.code(), Some(2));
    assert_eq!(fpp(&["building", "--p", "4"]).status.code(), Some(2));
    assert_eq!(fpp(&["building", "--p", "17"]).status.code(), Some(2));
    assert_eq!(fpp(&["quotient", "--flag", "P1,L1"]).status.code(), Some(2));
    assert_eq!(fpp(&["fano", "--orbits", "d4"]).status.code(), Some(2));
    assert_eq!(fpp(&["nonsense"]).status.code(), Some(2));
    assert_eq!(fpp(&["pi1", "--input", "/nonexistent/file"]).status.code(), Some(2));
    let err = String::from_utf8(fpp(&["building", "--radius", "5"]).stderr).unwrap();
    assert!(err.contains("exceeds the cap"));
}

#[test]
fn central_fiber_report() {
    let (code, v) = json(&["central-fiber", "--report"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counts"], serde_json::json!([16, 112, 112]));
    assert_eq!(v["result"]["orbit_table"]["faces"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["rotation_witness"]["order"], 3);
}

#[test]
fn quotient_round_trips_through_pi1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quotient.txt");
    let out = fpp(&["quotient", "--export", "text", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    let (code, v) = json(&["pi1", "--complex", path.to_str().unwrap(), "--basepoint", "orbit:Pi"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["factors"], serde_json::json!([42]));
    assert_eq!(v["result"]["order"], 42);
    assert_eq!(v["result"]["generators"], 15);
}

#[test]
fn pi1_defaults_and_files() {
    let (code, v) = json(&["pi1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["factors"], serde_json::json!([42]));
    assert_eq!(v["result"]["free_rank"], 0);
    assert_eq!(v["result"]["order"], 42);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rose.txt");
    std::fs::write(&path, "gens: a b c\nrel: a a b a b a\nrel: a b c b c b\nrel: b c c c c c\n").unwrap();
    let (code, v) = json(&["pi1", "--input", path.to_str().unwrap(), "--simplify"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["factors"], serde_json::json!([42]));
    assert_eq!(v["result"]["order"], 42);
    assert!(v["result"]["simplified"].as_str().unwrap().starts_with("gens: c\n"));

    let free = dir.path().join("free.txt");
    std::fs::write(&free, "gens: a\n").unwrap();
    let (code, v) = json(&["pi1", "--input", free.to_str().unwrap(), "--max-cosets", "100"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["free_rank"], 1);
    assert_eq!(v["result"]["order"], "overflow");
}

#[test]
fn invariants_json() {
    let (code, v) = json(&["invariants", "--n", "16", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["chi"], "16");
    assert_eq!(v["result"]["c1_sq"], 144);
    assert_eq!(v["result"]["c2"], 48);
    assert_eq!(v["result"]["fake_plane"]["reasons"][0], "pg unknown");
    let (_, v) = json(&["invariants", "--descend", "16", "--pg", "0", "--q-irr", "0"]);
    assert_eq!(v["result"]["descended"]["chi"], "1");
    assert_eq!(v["result"]["fake_plane"]["is_fake_plane"], true);
    let (code, _) = json(&["invariants", "--descend", "5"]);
    assert_eq!(code, 1);
    assert_eq!(fpp(&["invariants", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn verify_paper_is_complete_and_deterministic() {
    let (code, v) = json(&["verify-paper"]);
    assert_eq!(code, 0);
    assert!(v["assertions"].as_array().unwrap().len() >= 20);
    assert!(v["assertions"].as_array().unwrap().iter().all(|a| a["pass"] == true));
    let a = fpp(&["--json", "--no-timing", "verify-paper"]).stdout;
    let b = fpp(&["--json", "--no-timing", "verify-paper"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn flag_sweep_covers_all_flags() {
    let (code, v) = json(&["verify-paper", "--flag-sweep"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["flags"].as_array().unwrap().len(), 21);
}

#[test]
fn text_output_has_one_line_per_assertion() {
    let out = fpp(&["--no-timing", "invariants"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("[PASS] c1^2 = 3 c2")));
    assert!(text.ends_with("1/1 assertions passed\n"));
}
