use std::process::{Command, Output};

use serde_json::Value;

fn origami(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_origami"))
        .args(args)
        .env_remove("ORIGAMI_CACHE")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn census_of_odd_family() {
    let v = json(&origami(&["census", "--family", "amn-odd", "--genus", "5"]));
    assert_eq!(v["total"], 6);
    assert_eq!(v["OddSpin"], 6);
    assert_eq!(v["agree"], true);
}

#[test]
fn spin_of_a_line() {
    let v = json(&origami(&["spin", "n=5; h=(1,2,3,4,5); v=(1,3,5,4,2)"]));
    assert_eq!(v["parity"], 1);
}

#[test]
fn construct_genus_three_is_a_single_member() {
    let out = origami(&["--format", "csv", "construct", "--family", "amn-odd", "--genus", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2, "{}", text);
}

#[test]
fn orbits_at_genus_seven_need_extended() {
    let out = origami(&["orbits", "--genus", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_origami_is_a_usage_error() {
    assert_eq!(origami(&["spin", "n=3; h=(1,2"]).status.code(), Some(2));
}

#[test]
fn domain_error_exits_one() {
    // Genus 2 has no minimal [1,1] construction.
    let out = origami(&["construct", "--family", "amn-odd", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reproduce_double_covers_at_genus_five() {
    let v = json(&origami(&["reproduce", "thm1.4", "--genus", "5"]));
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 0);
}

#[test]
fn orbit_cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let line = "n=5; h=(1,2,3,4,5); v=(1,3,5,4,2)";
    let first = json(&origami(&["--cache", cache, "orbit", line]));
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let second = json(&origami(&["--cache", cache, "orbit", line]));
    assert_eq!(first["size"], second["size"]);
}
