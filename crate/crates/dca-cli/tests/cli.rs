use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};

fn dca(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dca")).args(args).current_dir(cwd).env_remove("DCA_SEED").output().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn fixture_object(id: &str, name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../dca/fixtures").join(format!("{id}.json"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["objects"][name].clone()
}

fn write(dir: &Path, name: &str, v: &Value) {
    std::fs::write(dir.join(name), serde_json::to_string(v).unwrap()).unwrap();
}

#[test]
fn parity_set_is_a_constant_parity_jump_system() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "jump01.json", &json!({"kind": "set", "dim": 1, "points": [[0], [2]]}));
    let o = dca(&["classify", "jump01.json", "--class", "cp-jump"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["holds"], json!(true));

    let o = dca(&["classify", "jump01.json", "--class", "mnat-set"], d.path());
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["holds"], json!(false));
    assert!(v["witness"].is_object());
}

#[test]
fn scaling_an_mnat_set_breaks_it() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "mnat3.json", &fixture_object("mnatsetscdim3", "S"));
    let o = dca(&["classify", "mnat3.json", "--class", "mnat-set"], d.path());
    assert_eq!(o.status.code(), Some(0));

    let o = dca(&["apply", "--op", "varscale", "--alpha", "2", "mnat3.json", "-o", "t.json"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = dca(&["classify", "t.json", "--class", "mnat-set"], d.path());
    assert_eq!(o.status.code(), Some(1));
    let v = stdout_json(&o);
    assert_eq!(v["holds"], json!(false));
    assert!(v["witness"].is_object());
}

#[test]
fn biconjugate_of_the_parity_function_at_the_origin() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "la1.json", &fixture_object("la1", "f"));
    let o = dca(&["biconjugate", "la1.json", "--at", "0,0,0"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["value"], json!("-1"));
    assert_eq!(v["f"], json!("0"));
}

#[test]
fn classify_all_lists_every_class_of_the_kind() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "s.json", &json!({"kind": "set", "dim": 2, "points": [[0, 0], [1, 0], [0, 1], [1, 1]]}));
    let o = dca(&["classify", "s.json", "--all"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 11);
    // a box has neither constant sum nor constant parity, and is in every other class
    for c in verdicts {
        let expect = !matches!(c["class"].as_str(), Some("m-set" | "cp-jump"));
        assert_eq!(c["holds"], json!(expect), "{c}");
        assert_eq!(c["witness"].is_object(), !expect, "{c}");
    }
}

#[test]
fn quadratic_helper_expands_onto_the_window() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "a.json", &json!([[2, -1], [-1, 2]]));
    // nonpositive off-diagonal, diagonally dominant: L♮ but not M♮
    let o = dca(&["classify", "--quadratic", "a.json", "--window", "-2..2", "--class", "lnat"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(stdout_json(&o)["holds"], json!(true));
    let o = dca(&["classify", "--quadratic", "a.json", "--window", "-2..2", "--class", "mnat"], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout_json(&o)["witness"].is_object());

    write(d.path(), "b.json", &json!([[2, 1], [1, 2]]));
    let o = dca(&["classify", "--quadratic", "b.json", "--window", "-1,0..2,3", "--class", "mnat"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn conjugate_writes_a_function_on_the_slope_window() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "f.json", &fixture_object("la1", "f"));
    let o = dca(&["conjugate", "f.json", "--pbox", "-2..2", "-o", "fc.json"], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let fc: Value = serde_json::from_str(&std::fs::read_to_string(d.path().join("fc.json")).unwrap()).unwrap();
    assert_eq!(fc["kind"], json!("function"));
    assert_eq!(fc["values"].as_array().unwrap().len(), 125);
}

#[test]
fn bad_input_is_a_usage_error_with_json_on_stderr() {
    let d = tempfile::tempdir().unwrap();
    write(d.path(), "s.json", &json!({"kind": "set", "dim": 1, "points": [[0]]}));
    std::fs::write(d.path().join("broken.json"), "{not json").unwrap();
    for args in [
        &["classify", "s.json", "--bogus"][..],
        &["classify", "broken.json"],
        &["classify", "missing.json"],
        &["classify", "s.json", "--class", "no-such-class"],
        &["apply", "--op", "shift", "s.json", "-o", "t.json"],
        &["apply", "--op", "spin", "s.json", "-o", "t.json"],
        &["biconjugate", "s.json", "--at", "0,0"],
        &["fixture", "--run", "no-such-fixture"],
        &["verify", "--table", "no-such-table", "--report", "r.json"],
    ] {
        let o = dca(args, d.path());
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        let e: Value = serde_json::from_slice(&o.stderr).unwrap_or_else(|_| panic!("{args:?}: stderr is not JSON"));
        assert!(e["error"].is_string(), "{args:?}");
    }
}

#[test]
fn fixtures_list_and_run() {
    let d = tempfile::tempdir().unwrap();
    let o = dca(&["fixture", "--list"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let ids: Vec<String> =
        stdout_json(&o).as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap().to_string()).collect();
    assert!(ids.contains(&"la1".to_string()) && ids.contains(&"conjIC".to_string()));
    let o = dca(&["fixture", "--run", "conjIC"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["outcome"], json!("pass"));
}

#[test]
fn verify_is_reproducible_and_honours_the_seed_variable() {
    let d = tempfile::tempdir().unwrap();
    let args = |r: &'static str| ["verify", "--table", "conjugacy", "--trials", "2", "--seed", "7", "--report", r];
    let a = dca(&args("a.json"), d.path());
    let b = dca(&args("b.json"), d.path());
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let ra = std::fs::read(d.path().join("a.json")).unwrap();
    assert_eq!(ra, std::fs::read(d.path().join("b.json")).unwrap());
    let summary = stdout_json(&a);
    assert_eq!(summary["seed"], json!(7));
    assert_eq!(summary["outcome"], json!("pass"));

    let o = Command::new(env!("CARGO_BIN_EXE_dca"))
        .args(["verify", "--table", "conjugacy", "--trials", "1", "--report", "c.json"])
        .current_dir(d.path())
        .env("DCA_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&o)["seed"], json!(99));
}
