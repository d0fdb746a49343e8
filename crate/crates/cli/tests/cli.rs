//! End-to-end runs of the `rackmod` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const CA12: &str = r#"{"n":2,"table":[[2,2],[1,1]]}"#;
const Z3: &str = r#"{"n":3,"Mt":[[1,1],[1,1]],"Ms":[[1,2],[2,1]]}"#;
const TRIVIAL1: &str = r#"{"n":1,"table":[[1]]}"#;
const TREFOIL: &str = include_str!("../../core/data/census/3_1.json");

fn rackmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rackmod")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

struct Files {
    _dir: TempDir,
    rack: String,
    module: String,
    trefoil: String,
    trivial: String,
}

fn files() -> Files {
    let dir = TempDir::new().unwrap();
    Files {
        rack: write(dir.path(), "ca12.json", CA12),
        module: write(dir.path(), "z3.json", Z3),
        trefoil: write(dir.path(), "3_1.json", TREFOIL),
        trivial: write(dir.path(), "t1.json", TRIVIAL1),
        _dir: dir,
    }
}

#[test]
fn rack_validate_and_rank() {
    let f = files();
    let o = rackmod(&["rack", "validate", &f.rack]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "valid rack, rank 2\n");
    assert_eq!(stdout(&rackmod(&["rack", "rank", &f.rack])), "2\n");
    let v: serde_json::Value = serde_json::from_str(&stdout(&rackmod(&["--format", "json", "rack", "validate", &f.rack]))).unwrap();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["quandle"], false);
}

#[test]
fn enhanced_invariant_of_trefoil() {
    let f = files();
    let args = ["invariant", "enhanced", "--rack", &f.rack, "--module", &f.module, "--diagram", &f.trefoil];
    let o = rackmod(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o), "2u^9\n");

    let mut json = vec!["--format", "json"];
    json.extend_from_slice(&args);
    json.push("--show-colorings");
    let v: serde_json::Value = serde_json::from_str(&stdout(&rackmod(&json))).unwrap();
    assert_eq!(v["sumOfExponents"], 18);
    assert_eq!(v["colorings"].as_array().unwrap().len(), 2);
    assert_eq!(v["colorings"][0]["beadCount"], 9);

    let dim = ["invariant", "dim", "--rack", &f.rack, "--module", &f.module, "--diagram", &f.trefoil];
    assert_eq!(stdout(&rackmod(&dim)), "2u^2\n");
}

#[test]
fn counting_invariant_of_trefoil() {
    let f = files();
    let o = rackmod(&["--format", "json", "invariant", "count", "--rack", &f.rack, "--diagram", &f.trefoil]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 2);
    assert_eq!(v["byWrithe"].as_array().unwrap().len(), 2);
}

#[test]
fn trivial_quandle_search() {
    let f = files();
    let o = rackmod(&["module", "search", "--rack", &f.trivial, "--modulus", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 module structure(s) over Z_3\n"), "{}", stdout(&o));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&rackmod(&["--format", "json", "module", "search", "--rack", &f.trivial, "--modulus", "3", "--max", "1"])))
            .unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    assert_eq!(v[0]["n"], 3);
}

#[test]
fn module_validate() {
    let f = files();
    let o = rackmod(&["module", "validate", "--rack", &f.rack, &f.module]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid module structure over Z_3\n"));
}

#[test]
fn census_over_builtin_entries() {
    let f = files();
    let o = rackmod(&["census", "run", "--rack", &f.rack, "--module", &f.module, "--entries", "4_1,U,3_1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("2u^3      | 4_1, U"), "{text}");
    assert!(text.contains("2u^9      | 3_1"), "{text}");
    let unknown = rackmod(&["census", "run", "--rack", &f.rack, "--module", &f.module, "--entries", "3_2"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn census_over_a_directory_skips_bad_files() {
    let f = files();
    let dir = TempDir::new().unwrap();
    write(dir.path(), "3_1.json", TREFOIL);
    write(dir.path(), "broken.json", "{");
    let d = dir.path().to_string_lossy().into_owned();
    let o = rackmod(&["--format", "json", "census", "run", "--rack", &f.rack, "--module", &f.module, "--data-dir", &d]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["rows"][0]["entries"][0], "3_1");
    assert_eq!(v["skipped"][0]["name"], "broken");
}

#[test]
fn exit_codes() {
    let f = files();
    let dir = TempDir::new().unwrap();
    let not_rack = write(dir.path(), "nr.json", r#"{"n":2,"table":[[1,1],[1,1]]}"#);
    let junk = write(dir.path(), "junk.json", "not json");
    let bad_module = write(dir.path(), "bm.json", r#"{"n":3,"Mt":[[1,1],[1,1]],"Ms":[[1,1],[1,1]]}"#);
    let missing = dir.path().join("missing.json").to_string_lossy().into_owned();

    let o = rackmod(&["rack", "validate", &not_rack]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
    assert_eq!(rackmod(&["rack", "validate", &junk]).status.code(), Some(2));
    assert_eq!(rackmod(&["rack", "validate", &missing]).status.code(), Some(2));
    assert_eq!(rackmod(&["module", "validate", "--rack", &f.rack, &bad_module]).status.code(), Some(1));
    assert_eq!(rackmod(&["module", "search", "--rack", &f.rack, "--modulus", "1"]).status.code(), Some(1));
    assert_eq!(rackmod(&["invariant", "count", "--rack", &f.rack, "--diagram", &junk]).status.code(), Some(2));
    assert_eq!(rackmod(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let f = files();
    let args = ["--format", "json", "census", "run", "--rack", &f.rack, "--module", &f.module, "--entries", "3_1,4_1,5_1,L2a1,U_2"];
    let first = stdout(&rackmod(&args));
    for _ in 0..3 {
        assert_eq!(stdout(&rackmod(&args)), first);
    }
    let search = ["module", "search", "--rack", &f.rack, "--modulus", "5"];
    assert_eq!(stdout(&rackmod(&search)), stdout(&rackmod(&search)));
}
