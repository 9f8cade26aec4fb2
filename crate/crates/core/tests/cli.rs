use focml::deps::Keep;
use focml::report;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn focml(args: &[&str], files: &[&str]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_focml"));
    c.args(args);
    for f in files {
        c.arg(fixture(f));
    }
    c.env_remove("FOCML_COLOR").output().expect("run focml")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn check_accepts_the_running_example() {
    let o = focml(&["check"], &["example.fcl"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).is_empty());
}

#[test]
fn check_rejects_with_the_right_kind() {
    for (file, kind, witness) in [
        ("wrong.fcl", "WrongCarrierLeak", "theo"),
        ("evenodd.fcl", "CycleInDependencies", "odd -> even -> odd"),
        ("unproved.fcl", "IncompleteSpecies", "zero_is_zero unproved"),
    ] {
        let o = focml(&["check"], &[file]);
        assert_eq!(o.status.code(), Some(1), "{file}");
        let err = stderr(&o);
        assert!(err.contains(kind) && err.contains(witness), "{file}: {err}");
    }
}

#[test]
fn reverted_proof_warns_then_blocks_collection() {
    let o = focml(&["check"], &["example.fcl", "isine.fcl"]);
    let err = stderr(&o);
    assert_eq!(o.status.code(), Some(1), "{err}");
    assert!(err.contains("warning RevertedProof") && err.contains("lowMin"), "{err}");
    assert!(err.contains("IncompleteSpecies") && err.contains("ExtIn_3_8"), "{err}");

    let o = focml(&["check"], &["example.fcl", "isine_admitted.fcl"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn deps_json_round_trips() {
    let o = focml(&["deps", "--json", "-"], &["example.fcl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let r = report::from_json(&text).unwrap();
    assert_eq!(report::to_json(&r), text);
    let env: Vec<(&str, Keep)> = r["TheInt"]["ltNotGt"].min_env.iter().map(|e| (e.name.as_str(), e.keep)).collect();
    assert_eq!(env, [("eq", Keep::TypeOnly), ("lt", Keep::TypeOnly), ("gt", Keep::TypeAndBody)]);
    let env: Vec<&str> = r["OrdData"]["ltNotGt"].min_env.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(env, ["lt", "gt"]);
}

#[test]
fn emit_writes_both_targets() {
    let dir = tempfile::tempdir().unwrap();
    let v = dir.path().join("out.v");
    let ml = dir.path().join("out.ml");
    let o = focml(&["emit", "--logical", v.to_str().unwrap(), "--comp", ml.to_str().unwrap()], &["example.fcl"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    let v = std::fs::read_to_string(v).unwrap();
    let ml = std::fs::read_to_string(ml).unwrap();
    assert!(v.contains("Module In_5_10.") && v.contains("Theorem lowMin"));
    assert!(ml.contains("module In_5_10 = struct") && !ml.contains("lowMin"));

    let o = focml(&["emit"], &["example.fcl"]);
    assert_eq!(stdout(&o), v);
}

#[test]
fn eval_calls_a_collection_method() {
    let o = focml(&["eval", "--call", "In_5_10!filter(12)"], &["example.fcl"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "(10, Too_high)");

    let o = focml(&["eval", "--call", "In_5_10!nope(1)"], &["example.fcl"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("focml: eval:"));
}

#[test]
fn doc_lists_origins_and_admitted() {
    let o = focml(&["doc"], &["example.fcl", "isine_admitted.fcl"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("species IsInE"));
    assert!(out.contains("filter (from IsInE)"), "{out}");
    assert!(out.contains("getValue (from IsIn)"), "{out}");
    assert!(out.lines().skip_while(|l| *l != "admitted:").any(|l| l.trim() == "IsInE.lowMin"), "{out}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(focml(&["check"], &[]).status.code(), Some(2));
    assert_eq!(focml(&["check", "/nonexistent/x.fcl"], &[]).status.code(), Some(2));
    assert_eq!(focml(&["eval", "--call", "not a call"], &["example.fcl"]).status.code(), Some(2));
    assert_eq!(focml(&["frobnicate"], &[]).status.code(), Some(2));
}
