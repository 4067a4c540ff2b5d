mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use common::replay::witness_from_json;
use quatrec::algebra::Algebra;
use quatrec::cli::file::AlgebraFile;
use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quatrec"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = run(&full);
    let v: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    assert_eq!(v["exit_code"].as_i64(), Some(code as i64));
    (code, v)
}

fn export(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{}.json", name.replace(['(', ')', ','], "_")));
    let (code, _, err) = run(&["examples", "--name", name, "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    path
}

fn load(path: &Path) -> Algebra {
    AlgebraFile::from_json(&std::fs::read_to_string(path).unwrap()).unwrap().to_algebra().unwrap()
}

fn replay_all(alg: &Algebra, report: &Value) {
    let ws = report["witnesses"].as_array().unwrap();
    assert!(!ws.is_empty(), "refusal without witness: {report}");
    let lifted = alg.lift_to_field();
    for w in ws {
        assert!(witness_from_json(alg, w).verify(&lifted), "witness fails to replay: {w}");
    }
}

#[test]
fn recognize_hamilton_succeeds() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "hamilton");
    let (code, v) = run_json(&["recognize", h.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "affirmative");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 0);
}

#[test]
fn check_matrix_algebra_refuses_with_e12() {
    let dir = TempDir::new().unwrap();
    let m = export(dir.path(), "matrix(2)");
    let alg = load(&m);
    let (code, v) = run_json(&["check", m.to_str().unwrap()]);
    assert_eq!(code, 1);
    replay_all(&alg, &v);
    let w = &v["witnesses"][0];
    assert_eq!(w["kind"], "commutator_zero_divisor");
    // E12 in the row-major matrix basis
    assert_eq!(w["commutator"], serde_json::json!(["0", "1", "0", "0"]));
}

#[test]
fn decompose_hamilton_coordinates() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "hamilton");
    let (code, v) = run_json(&["decompose", h.to_str().unwrap(), "--element", "1,2,3,4"]);
    assert_eq!(code, 0);
    let coords: Vec<String> = v["result"]["coordinates"].as_array().unwrap().iter().map(|c| c[0].as_str().unwrap().to_string()).collect();
    assert_eq!(coords, ["1", "2", "3", "4"]);
    let (_, text, _) = run(&["decompose", h.to_str().unwrap(), "--element", "1,2,3,4"]);
    assert!(text.contains("coordinates: (1, 2, 3, 4)"), "{text}");
}

#[test]
fn refusals_carry_replayable_witnesses() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&str, &[&str])] = &[
        ("matrix(2)", &["recognize"]),
        ("quaternion(1,1)", &["recognize"]),
        ("upper(3)", &["check"]),
        ("matrix(2,F2)", &["recognize"]),
        ("matrix(2,F2)", &["decompose", "--element", "0,1,0,0"]),
        ("matrix(2,F3)", &["check"]),
        ("diagonal(2)", &["center"]),
        ("hamilton", &["quadratic", "--element", "5,0,0,0"]),
        ("ext(hamilton,4)", &["recognize"]),
    ];
    for (name, cmd) in cases {
        let path = export(dir.path(), name);
        let alg = load(&path);
        let mut args = vec![cmd[0], path.to_str().unwrap()];
        args.extend_from_slice(&cmd[1..]);
        let (code, v) = run_json(&args);
        assert_eq!(code, 1, "{name} {cmd:?}: {v}");
        replay_all(&alg, &v);
    }
}

#[test]
fn characteristic_two_is_refused_not_crashed() {
    let dir = TempDir::new().unwrap();
    let m = export(dir.path(), "matrix(2,F2)");
    for cmd in [&["recognize"][..], &["decompose", "--element", "1,1,0,1"][..]] {
        let mut args = vec![cmd[0], m.to_str().unwrap()];
        args.extend_from_slice(&cmd[1..]);
        let (code, v) = run_json(&args);
        assert_eq!(code, 1);
        assert!(v["witnesses"].as_array().unwrap().iter().any(|w| w["kind"] == "characteristic_two"), "{v}");
        assert!(v["message"].as_str().unwrap().contains("characteristic 2"));
    }
}

#[test]
fn json_reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for name in ["hamilton", "upper(3)", "quaternion(1,1)"] {
        let p = export(dir.path(), name);
        for cmd in ["check", "recognize", "center"] {
            let a = run(&["--format", "json", "--seed", "7", cmd, p.to_str().unwrap()]);
            let b = run(&["--format", "json", "--seed", "7", cmd, p.to_str().unwrap()]);
            assert_eq!(a, b, "{name} {cmd}");
        }
    }
}

#[test]
fn report_records_input_digest_and_parameters() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "hamilton");
    let (_, v) = run_json(&["--samples", "5", "--height", "3", "check", h.to_str().unwrap()]);
    assert_eq!(v["tool"], "quatrec");
    assert_eq!(v["parameters"]["samples"], 5);
    assert_eq!(v["parameters"]["height"], 3);
    assert_eq!(v["input"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn exported_examples_round_trip() {
    let dir = TempDir::new().unwrap();
    for name in ["hamilton", "lipschitz", "quaternion(2,5)", "matrix(3,F5)", "upper(2)", "ext(hamilton,2)", "sum(hamilton,diagonal(1))"] {
        let p = export(dir.path(), name);
        let alg = load(&p);
        let built = quatrec::builtins::Builtin::parse(name).unwrap().build().unwrap();
        assert_eq!(alg, built, "{name}");
    }
}

#[test]
fn input_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(run(&["check", missing.to_str().unwrap()]).0, 3);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"base\": \"Q\", \"dim\": 1, \"unit\": [\"1\"], \"table\": [[[\"x\"]]] }").unwrap();
    let (code, out, _) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(out.contains("table[0][0][0]"), "{out}");

    let h = export(dir.path(), "hamilton");
    assert_eq!(run(&["decompose", h.to_str().unwrap(), "--element", "1,2"]).0, 3);
    assert_eq!(run(&["no-such-command"]).0, 3);
    assert_eq!(run(&["enumerate", "--dim", "4", "--field", "2"]).0, 3);
    assert_eq!(run(&["examples", "--name", "octonion", "--out", dir.path().join("o.json").to_str().unwrap()]).0, 3);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn invalid_presentation_is_refused_with_witness() {
    let dir = TempDir::new().unwrap();
    let h = export(dir.path(), "hamilton");
    let mut file = AlgebraFile::from_json(&std::fs::read_to_string(&h).unwrap()).unwrap();
    file.table[1][2] = vec!["0".into(), "0".into(), "0".into(), "-1".into()];
    let p = dir.path().join("broken.json");
    std::fs::write(&p, file.to_json()).unwrap();
    let alg = file.to_algebra().unwrap();
    let (code, v) = run_json(&["check", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["witnesses"][0]["kind"], "non_associative");
    replay_all(&alg, &v);
}

#[test]
fn commutative_and_sampled_verdicts() {
    let dir = TempDir::new().unwrap();
    let d = export(dir.path(), "diagonal(3)");
    let (code, v) = run_json(&["recognize", d.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["witnesses"][0]["kind"], "commutative");
    // h1 on hamilton is settled by the division certificate
    let h = export(dir.path(), "hamilton");
    let (code, v) = run_json(&["check", h.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    // over an enlarged center no division certificate exists, so sampling is all there is
    let e = export(dir.path(), "ext(hamilton,2)");
    assert_eq!(run(&["check", e.to_str().unwrap()]).0, 2);
    let f = export(dir.path(), "quaternion(2,2,F3)");
    assert_eq!(run(&["check", f.to_str().unwrap()]).0, 1);
}

#[test]
fn enumerate_small_sweep() {
    let (code, v) = run_json(&["enumerate", "--dim", "3", "--field", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tables"], 4096);
    assert_eq!(v["result"]["passes_both"], 0);
    for s in v["result"]["samples"].as_array().unwrap() {
        if s["witness"].is_null() {
            continue;
        }
        let alg: AlgebraFile = serde_json::from_value(s["table"].clone()).unwrap();
        let alg = alg.to_algebra().unwrap();
        assert!(witness_from_json(&alg, &s["witness"]).verify(&alg));
    }
}
