use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn setfam(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_setfam"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fano_construct_piped_into_stats() {
    let built = setfam(&["construct", "--name", "fano", "--n", "7", "--k", "3"], None);
    assert!(built.status.success());
    let stats = setfam(&["stats"], Some(&stdout(&built)));
    assert!(stats.status.success());
    let v: Value = serde_json::from_str(&stdout(&stats)).unwrap();
    assert_eq!(v["rho"], "3/7");
    assert_eq!(v["size"], 7);
    assert_eq!(v["covering_number"], 3);
}

#[test]
fn piped_stats_match_in_process_stats() {
    let built = setfam(&["construct", "--name", "a_r", "--n", "9", "--k", "4", "--r", "3"], None);
    let family = setfam_core::json::from_json(&stdout(&built)).unwrap();
    let expected = serde_json::to_value(family.stats().unwrap()).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ar.json");
    std::fs::write(&path, stdout(&built)).unwrap();
    let stats = setfam(&["stats", "--in", path.to_str().unwrap()], None);
    let got: Value = serde_json::from_str(&stdout(&stats)).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn shift_reaches_an_initial_family() {
    let family = r#"{"n":6,"k":2,"sets":[[3,4],[3,5],[4,5]]}"#;
    let out = setfam(&["shift"], Some(family));
    assert!(out.status.success());
    let result: Value = serde_json::from_str(stdout(&out).lines().last().unwrap()).unwrap();
    let shifted = setfam_core::json::from_value(result["families"][0].clone()).unwrap();
    assert!(shifted.is_initial());
    assert_eq!(shifted.len(), 3);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(setfam(&["verify", "--claim", "C21", "--n-max", "60"], None).status.code(), Some(0));
    // a refutation exits 1
    assert_eq!(setfam(&["verify", "--claim", "C13", "--n", "7", "--k", "3"], None).status.code(), Some(1));
    // a sampled claim that finds nothing is inconclusive
    assert_eq!(setfam(&["verify", "--claim", "C15", "--n-max", "6", "--samples", "50"], None).status.code(), Some(2));
}

#[test]
fn json_report_carries_the_verdict() {
    let out = setfam(&["verify", "--claim", "C21", "--n-max", "20", "--format", "json"], None);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "holds");
}

#[test]
fn usage_and_data_errors() {
    assert_eq!(setfam(&["frobnicate"], None).status.code(), Some(64));
    assert_eq!(setfam(&["verify", "--claim", "C99"], None).status.code(), Some(64));
    // hypothesis not met: m < 2ℓ
    assert_eq!(setfam(&["verify", "--claim", "C9", "--m", "5", "--l", "3"], None).status.code(), Some(65));
    assert_eq!(setfam(&["stats"], Some("not json")).status.code(), Some(65));
    assert_eq!(setfam(&["stats"], Some(r#"{"n":4,"k":2,"sets":[]}"#)).status.code(), Some(65));
}
