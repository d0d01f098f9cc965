use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use weylrack::cli_harness::cache::{decode_line, encode_line, CACHE_FILE};

fn weylrack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylrack")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn classes_of_b3() {
    let v = json(&weylrack(&["--json", "classes", "--group", "b", "--n", "3"]));
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 10);
    let total: u64 = classes.iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 48);
    for c in classes {
        assert_eq!(c["size"].as_u64().unwrap() * c["centralizer_order"].as_u64().unwrap(), 48);
    }
}

#[test]
fn sq_of_a_type_3_3_pair() {
    let v = json(&weylrack(&["--json", "sq", "111111:(1 2 3)(4 5 6)", "100100:(1 3 2)(4 5 6)"]));
    assert_eq!(v["square_commutes"], Value::Bool(false));
    assert_ne!(v["sq"], v["y"]);
}

#[test]
fn typed_single_class() {
    let v = json(&weylrack(&["--json", "typed", "--group", "b", "--n", "5", "--rep", "00000:(1 2 3 4 5)"]));
    let verdict = &v["verdicts"][0];
    assert_eq!(verdict["status"], "proven_type_d");
    let v = json(&weylrack(&["--json", "typed", "--group", "b", "--n", "5", "--rep", "00000:(1 2)(3 4 5)"]));
    assert_eq!(v["verdicts"][0]["status"], "in_exception_list");
}

#[test]
fn nichols_s3_sign() {
    let v = json(&weylrack(&[
        "--json", "nichols", "--group", "s", "--n", "3", "--rep", "000:(1 2)", "--char=-1", "--max-degree", "6",
    ]));
    assert_eq!(v["graded_dims"], serde_json::json!([1, 3, 4, 3, 1, 0]));
    assert_eq!(v["total"], 12);
}

#[test]
fn nichols_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("rep.json");
    fs::write(&file, r#"[[["-1"]]]"#).unwrap();
    let arg = format!("--char=@{}", file.display());
    let v = json(&weylrack(&["--json", "nichols", "--group", "s", "--n", "3", "--rep", "000:(1 2)", &arg]));
    assert_eq!(v["total"], 12);
}

#[test]
fn fk_with_and_without_signs_file() {
    let v = json(&weylrack(&["--json", "fk", "--n", "3", "--max-degree", "6", "--engine", "linear"]));
    assert_eq!(v["total"], 12);
    assert_eq!(v["probe"]["probe"], "vanishes_at_degree");
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("signs.json");
    fs::write(&file, "{}").unwrap();
    let signs = file.to_str().unwrap();
    let w = json(&weylrack(&["--json", "fk", "--n", "3", "--max-degree", "6", "--signs", signs]));
    assert_eq!(w["graded_dims"], v["graded_dims"]);
}

#[test]
fn verify_exit_codes() {
    let ok = weylrack(&["verify", "group_laws", "--samples", "500"]);
    assert!(ok.status.success());
    let red = weylrack(&["verify", "juxtaposition", "--max-rank", "3", "--samples", "10"]);
    assert_eq!(red.status.code(), Some(1));
    let unknown = weylrack(&["verify", "no_such_suite"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn verify_json_is_seed_deterministic() {
    let args = |seed: &'static str| ["--json", "--seed", seed, "verify", "rack_axioms", "--samples", "300", "--max-rank", "5"];
    let a = weylrack(&args("7"));
    let b = weylrack(&args("7"));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn bad_input_is_reported() {
    let out = weylrack(&["sq", "01:(1 2)", "010:(1 2)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = weylrack(&["classes", "--group", "d", "--n", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_hits_skips_corruption_and_flags_stale_records() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--json", "--cache-dir", d, "fk", "--n", "3", "--max-degree", "6"];
    let first = json(&weylrack(&args));
    assert_eq!(first["cached"], false);
    let second = json(&weylrack(&args));
    assert_eq!(second["cached"], true);
    assert_eq!(first["graded_dims"], second["graded_dims"]);

    // a tampered copy of the record and a garbage line are both ignored
    let path = dir.path().join(CACHE_FILE);
    let line = fs::read_to_string(&path).unwrap();
    let tampered = line.replace("\"total\":12", "\"total\":13");
    fs::write(&path, format!("{line}{tampered}not json\n")).unwrap();
    let third = weylrack(&args);
    let v = json(&third);
    assert_eq!(v["total"], 12);
    assert!(String::from_utf8_lossy(&third.stderr).contains("skipped"));

    // a record from another library version is served but marked stale
    let mut record = decode_line(line.trim()).unwrap();
    record.library_version = "0.0.0-old".into();
    fs::write(&path, encode_line(&record).unwrap() + "\n").unwrap();
    let v = json(&weylrack(&args));
    assert_eq!(v["cached"], true);
    assert_eq!(v["stale"], true);
}
