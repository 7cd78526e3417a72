use std::path::Path;
use std::process::{Command, Output};

fn metakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metakit")).args(args).env_remove("METAKIT_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture() -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/overlapping_images.rel").display().to_string()
}

#[test]
fn laws_table_and_exit_codes() {
    let o = metakit(&["laws", "--only", "eq-16,eq-20", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("eq-16") && l.contains("PASS")), "{out}");
    assert!(out.trim_end().ends_with("status: PASS"));

    let o = metakit(&["laws", "--only", "eq-16", "--mutate", "wrong-converse", "--samples", "20"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));

    let o = metakit(&["laws", "--only", "eq-9999"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("eq-9999"));
}

#[test]
fn laws_json_is_stable() {
    let args = ["laws", "--only", "eq-34", "--samples", "30", "--json"];
    let (a, b) = (metakit(&args), metakit(&args));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["status"], "PASS");
    assert_eq!(v["config"]["samples"], 30);
}

#[test]
fn seed_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_metakit"))
        .args(["laws", "--only", "eq-34", "--samples", "5", "--json"])
        .env("METAKIT_SEED", "41")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 41);
}

#[test]
fn rel_classifies_expressions_over_fixtures() {
    let f = fixture();
    let o = metakit(&["rel", "R sd R", "-f", &f]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("a3 -> a5") && out.contains("a5 -> a3"));
    assert!(out.contains("equivalence: yes"));

    let out = stdout(&metakit(&["rel", "R", "-f", &f]));
    assert!(out.contains("difunctional: no"));

    let out = stdout(&metakit(&["rel", "power R", "-f", &f, "--power-bound", "5"]));
    assert!(out.contains("a2 -> {b3,b4}"), "{out}");

    let out = stdout(&metakit(&["rel", "R ; conv R ; R", "-f", &f, "--compare", "R"]));
    assert!(out.contains("included in R: no"), "{out}");

    let o = metakit(&["rel", "R ;", "-f", &f]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 4"));
}

#[test]
fn demos_check_against_their_oracles() {
    let out = stdout(&metakit(&["demo", "qsort", "[3,1,2]"]));
    assert!(out.contains("node(3, node(1, empty, node(2, empty, empty)), empty)"), "{out}");
    assert!(out.contains("output  [1,2,3]") && out.trim_end().ends_with("OK"));

    let out = stdout(&metakit(&["demo", "msort", "[2,0,1,1]"]));
    assert!(out.contains("output  [0,1,1,2]") && out.trim_end().ends_with("OK"), "{out}");

    let out = stdout(&metakit(&["demo", "minheight", "[1,1,1,1]"]));
    assert!(out.contains("height  3") && out.trim_end().ends_with("OK"), "{out}");

    let out = stdout(&metakit(&["demo", "repchanger", "[1,2]", "--b", "3"]));
    assert!(out.contains("output  [1,2,3]") && out.trim_end().ends_with("OK"), "{out}");

    assert_eq!(metakit(&["demo", "qsort", "[1,"]).status.code(), Some(3));
}

#[test]
fn checklist_passes_and_catches_the_dropped_bound() {
    let o = metakit(&["checklist", "quicksort", "--alphabet", "2", "--maxlen", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("eq-") && l.contains("PASS")).count(), 4, "{out}");
    assert!(out.contains("derived Z equals the handwritten divide step"));

    let o = metakit(&["checklist", "quicksort", "--alphabet", "2", "--maxlen", "2", "--mutate", "drop-left-bound"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("eq-78  FAIL") && out.contains("witness:"), "{out}");

    let o = metakit(&["checklist", "quicksort", "--maxlen", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("vacuous"));
}
