use std::fs;
use std::process::{Command, Output};

use gbb::io::ReportEnvelope;

fn gbb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbb")).args(args).output().expect("binary runs")
}

fn envelope(args: &[&str]) -> (ReportEnvelope, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = gbb(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    (ReportEnvelope::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}")), out.status.code().unwrap())
}

#[test]
fn check_special_on_the_index_sixteen_fixture() {
    let (env, code) = envelope(&["check-special", "--fixture", "s9-index16", "--wrap", "2"]);
    assert_eq!(code, 0);
    assert_eq!(env.verdicts["special"], true);
    let (env, code) = envelope(&["check-special", "--fixture", "square-index2-d"]);
    assert_eq!(code, 1);
    assert_eq!(env.verdicts["special"], false);
    assert!(!env.witnesses.is_empty());
}

#[test]
fn sweep_table() {
    let (env, code) = envelope(&["report", "--sweep"]);
    assert_eq!(code, 0);
    assert_eq!(env.verdicts["quotients"], 15);
    assert_eq!(env.verdicts["torsion_free"], 8);
    assert_eq!(env.verdicts["special_among_torsion_free"], 0);
    assert_eq!(env.verdicts["index_sixteen_special"], true);
    assert_eq!(env.data["rows"].as_array().unwrap().len(), 16);
}

#[test]
fn envelopes_reparse_and_digest_inputs() {
    let (a, _) = envelope(&["rset", "--fixture", "pqrs", "--n", "3", "--k", "1"]);
    let (b, _) = envelope(&["rset", "--fixture", "pqrs", "--n", "3", "--k", "1"]);
    assert_eq!(a, b);
    assert_eq!(a.inputs.digest(), a.inputs_digest);
    assert_eq!(a.verdicts["r_set"], "3Z | 2+3Z");
    let again = ReportEnvelope::from_json(&a.to_json()).unwrap();
    assert_eq!(again, a);
}

#[test]
fn recipe_files_feed_back_in() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (_, code) = envelope(&["recipe", "--kind", "cocycle", "--fixture", "hexagon", "--out-dir", d]);
    assert_eq!(code, 0);
    let cover = format!("{d}/cover.json");
    let quotient = format!("{d}/quotient.json");
    let (env, code) = envelope(&["verify-quotient", "--cover", &cover, "--s", "3Z", "--quotient", &quotient]);
    assert_eq!(code, 0);
    assert_eq!(env.verdicts["kernel_torsion_free"], true);
    assert_eq!(env.inputs.files.len(), 2);
    let (env, code) = envelope(&["build-complex", "--cover", &cover, "--s", "3Z", "--quotient", &quotient]);
    assert_eq!(code, 0);
    assert_eq!(env.verdicts["links_ok"], true);
}

#[test]
fn dehn_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let set = dir.path().join("t.json");
    fs::write(&set, r#"{"kind": "godel", "S": [0], "known_digits": 1}"#).unwrap();
    let set = set.to_str().unwrap();
    let power = |n: i64| (1..=13).map(|k| format!("a{k}^{n}")).collect::<Vec<_>>().join(" ");
    assert_eq!(gbb(&["dehn", "--l", "13", "--set", set, "--word", &power(1)]).status.code(), Some(0));
    assert_eq!(gbb(&["dehn", "--l", "13", "--set", set, "--word", &power(2)]).status.code(), Some(1));
    let out = gbb(&["dehn", "--l", "13", "--set", set, "--word", &power(6)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("window"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(gbb(&["check-special", "--fixture", "nonesuch"]).status.code(), Some(2));
    assert_eq!(gbb(&["rset", "--fixture", "pqrs"]).status.code(), Some(2));
    assert_eq!(gbb(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(gbb(&["dehn", "--t", "2Z", "--word", "b1"]).status.code(), Some(2));
}

#[test]
fn fixtures_list_is_nonempty() {
    let out = gbb(&["fixtures", "list"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().lines().count() >= 5);
}
