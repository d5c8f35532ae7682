use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use sset_core::constructions::{standard_simplex, terminal_map, vertex_map, FiniteCategory};
use sset_core::SimplicialSet;

fn sset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sset")).args(args).env_remove("SSET_BUDGET").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn verify_prism_reports_top_simplices() {
    let o = sset(&["verify", "prism", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("4 top simplices"), "{}", stdout(&o));
}

#[test]
fn count_wide_join_triangles() {
    let o = sset(&["count", "wjoin(delta 0, delta 1)", "--dim", "2", "--nondeg"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "2");
    let o = sset(&["count", "wjoin(delta 0, delta 1)", "--dim", "1", "--all"]);
    assert_eq!(stdout(&o).trim(), "7");
}

#[test]
fn certify_spine_in_simplex() {
    let o = sset(&["certify", "spine 3", "delta 3", "--class", "inner", "--budget", "10000"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["step_count"], 4);
    assert_eq!(v["certificate"]["steps"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    let o = sset(&["build", "join(delta 0,"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 13"));
    assert!(o.stdout.is_empty());
    assert_eq!(code(&sset(&["certify", "delta 0", "delta 1", "--class", "inner"])), 1);
    assert_eq!(code(&sset(&["certify", "spine 4", "delta 4", "--class", "inner", "--budget", "5"])), 3);
    assert_eq!(code(&sset(&["verify", "bogus", "--n", "1"])), 2);
    assert_eq!(code(&sset(&["count", "delta 1"])), 2);
    assert_eq!(code(&sset(&["verify", "thmD", "--n", "2"])), 2);
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sset"))
        .args(["certify", "spine 4", "delta 4", "--class", "inner"])
        .env("SSET_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn json_round_trip_is_bit_exact() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    let path = path.to_str().unwrap();
    let o = sset(&["build", "let x = delta 1 in wjoin(x, coprod(x, delta 0))", "-o", path]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(path).unwrap();
    let x = SimplicialSet::from_json_str(&text).unwrap();
    assert_eq!(x.to_json_string(), text);
    let e = sset(&["export", "let x = delta 1 in wjoin(x, coprod(x, delta 0))", "--format", "json"]);
    assert_eq!(stdout(&e).trim(), text);
}

#[test]
fn dot_export() {
    let o = sset(&["export", "delta 2", "--format", "dot"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.contains("fillcolor"));
    assert_eq!(s.matches("->").count(), 3 + 3);
}

#[test]
fn check_map_files() {
    let dir = tempfile::tempdir().unwrap();
    let d1 = Arc::new(standard_simplex(1));
    let map = write(dir.path(), "p.json", &terminal_map(&d1).to_json_string());
    assert_eq!(code(&sset(&["check", &map, "--class", "inner", "--max-dim", "3"])), 0);
    let o = sset(&["check", &map, "--class", "kan", "--max-dim", "2"]);
    assert_eq!(code(&o), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], false);
    assert_eq!(code(&sset(&["check", "/nonexistent.json", "--class", "kan", "--max-dim", "2"])), 2);
}

#[test]
fn slices_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let d1 = Arc::new(standard_simplex(1));
    let set = write(dir.path(), "x.json", &d1.to_json_string());
    let map = write(dir.path(), "p.json", &vertex_map(&d1, 0).unwrap().to_json_string());
    for cmd in ["slice", "wide-slice"] {
        let o = sset(&[cmd, &set, &map, "--max-dim", "2"]);
        assert_eq!(code(&o), 0, "{cmd}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["truncation_dim"], 2);
        assert_eq!(v["nondeg"], serde_json::json!([2, 1]), "{cmd}");
    }
}

#[test]
fn nerve_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let cat = write(dir.path(), "c.json", &FiniteCategory::chain(2).to_json_string());
    let o = sset(&["count", &format!("nerve {cat}"), "--dim", "2", "--nondeg"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn verify_all_passes() {
    let o = sset(&["verify", "all", "--n", "2"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 2 * 3 + 2 + 4);
    let o = sset(&["verify", "thmA", "--n", "3", "--objects", "1", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["details"]["instances"], 3);
}
