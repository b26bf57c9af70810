use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn poslab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poslab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn shipped() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn fixture(name: &str) -> String {
    shipped().join(name).to_str().unwrap().to_string()
}

#[test]
fn shipped_fixtures_are_current() {
    let dir = tempfile::tempdir().unwrap();
    let out = poslab(&["fixtures", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let mut names: Vec<String> =
        fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    let mut shipped_names: Vec<String> =
        fs::read_dir(shipped()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    shipped_names.sort();
    assert_eq!(names, shipped_names);
    for n in &names {
        let fresh = fs::read_to_string(dir.path().join(n)).unwrap();
        assert_eq!(fresh, fs::read_to_string(shipped().join(n)).unwrap(), "{n} is stale; rerun `poslab fixtures fixtures`");
    }
}

#[test]
fn oracle_passes_on_shipped_fixtures() {
    let out = poslab(&["oracle", "--fixtures", shipped().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn wrong_annotation_is_a_finding() {
    let dir = tempfile::tempdir().unwrap();
    let text = fs::read_to_string(shipped().join("gffg_sep_1.cgs.json")).unwrap();
    let swapped = text.replace("\"a1\"\n    ]", "\"PLACEHOLDER\"").replace("\"alpha1\"\n    ]", "\"a1\"\n    ]").replace("\"PLACEHOLDER\"", "\"alpha1\"\n    ]");
    assert_ne!(swapped, text);
    fs::write(dir.path().join("gffg_sep_1.cgs.json"), swapped).unwrap();
    let out = poslab(&["oracle", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], Value::Bool(false));
}

#[test]
fn classify_examples() {
    let r = json(&poslab(&["classify", &fixture("gfa_fgb.algebra.json")]));
    assert_eq!(r["edge_positional"], Value::Bool(true));
    let r = json(&poslab(&["classify", &fixture("fa_fb.algebra.json")]));
    assert_eq!(r["edge_positional"], Value::Bool(false));
    assert!(r["counterexamples"]["edge_condition1"].is_object());
    // DPA files are compiled first
    let r = json(&poslab(&["classify", &fixture("abc_omega.dpa.json")]));
    assert_eq!((r["state_positional"].as_bool(), r["edge_positional"].as_bool()), (Some(true), Some(false)));
}

#[test]
fn model_checking_separators() {
    let r = json(&poslab(&["mc", &fixture("gffg_sep_1.cgs.json"), "(coal (1) (gffg a b))"]));
    let states: Vec<&str> = r["states"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert!(states.contains(&"a1") && !states.contains(&"alpha1"), "{states:?}");
    let r = json(&poslab(&["mc", &fixture("gu_sep_1.cgs.json"), "(coal (1) (gu p q))", "--semantics", "bipositional"]));
    let states: Vec<&str> = r["states"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
    assert!(states.contains(&"s'1") && !states.contains(&"s1"));
}

#[test]
fn compile_output_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fin_bb.algebra.json");
    let out = poslab(&["compile", "sr", "--letters", "ab", "--s", "a", "bb", "--algebra", "-o", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&poslab(&["classify", path.to_str().unwrap()]));
    assert_eq!((r["prefix_independent"].as_bool(), r["edge_positional"].as_bool()), (Some(true), Some(true)));
    for args in [&["compile", "rabin", "--letters", "abc", "a:b"][..], &["compile", "fg", "--letters", "abc", "ab", "c"]] {
        let out = poslab(args);
        assert!(out.status.success());
        fs::write(&path, &out.stdout).unwrap();
        assert!(poslab(&["classify", path.to_str().unwrap()]).status.success());
    }
}

#[test]
fn solving_gadgets() {
    let arena = fixture("cond1.arena.json");
    let objective = fixture("fa_fb.algebra.json");
    let r = json(&poslab(&["solve", &arena, "--objective", &objective]));
    // no positional win anywhere, but a one-bit memory wins from the start
    assert!(r["player1"]["region"].as_array().unwrap().is_empty(), "{r}");
    let r = json(&poslab(&["solve", &arena, "--objective", &objective, "--mode", "monitor:seen:a"]));
    assert!(r["player1"]["region"].as_array().unwrap().iter().any(|n| n == "n1"), "{r}");
    let r = json(&poslab(&["solve", &arena, "--objective", &objective, "--mode", "monitor:bounded:2"]));
    assert!(r["player1"]["region"].as_array().unwrap().iter().any(|n| n == "n1"), "{r}");
}

#[test]
fn antidict_commands() {
    let r = json(&poslab(&["antidict", "check", "--letters", "ab", "ab", "ba"]));
    assert_eq!(r["totally_ordered"], Value::Bool(false));
    let r = json(&poslab(&["antidict", "extend", "--letters", "ab", "--letter", "a", "ab"]));
    assert_eq!(r["words"], serde_json::json!(["a"]));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(poslab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(poslab(&["classify", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(poslab(&["mc", &fixture("gffg_sep_1.cgs.json"), "(coal (1) (and a b))"]).status.code(), Some(2));
    assert_eq!(poslab(&["separator", "gu", "9"]).status.code(), Some(2));
    let out = poslab(&["gadget", "cond1", "u=,v=,w=b,x=b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}
