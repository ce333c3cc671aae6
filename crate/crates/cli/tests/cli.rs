use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn gq416(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gq416")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn construct(dir: &Path) -> String {
    let path = dir.join("q54.gq");
    let out = gq416(&["construct", "-o", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path.to_str().unwrap().to_owned()
}

#[test]
fn construct_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let first = construct(dir.path());
    let second = dir.path().join("again.gq");
    assert!(gq416(&["construct", "-o", second.to_str().unwrap()]).status.success());
    let a = fs::read(&first).unwrap();
    assert_eq!(a, fs::read(&second).unwrap());
    assert!(String::from_utf8(a).unwrap().starts_with("GQ 4 16 325 1105\n"));
}

#[test]
fn construct_into_missing_directory_fails() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("no/such/dir/q54.gq");
    let out = gq416(&["construct", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("writing"));
}

#[test]
fn verify_srg_suite_as_json() {
    let dir = TempDir::new().unwrap();
    let input = construct(dir.path());
    let report = dir.path().join("report.json");
    let out = gq416(&["verify", &input, "--suite", "srg", "--format", "json", "-o", report.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["overall"], "pass");
    let srg = &json["entries"]["srg"];
    assert_eq!(srg["status"], "pass");
    let params = serde_json::to_string(&srg["details"]).unwrap();
    for v in ["325", "68", "3", "17"] {
        assert!(params.contains(v), "{params}");
    }
    let parsed = gq_core::VerificationReport::from_json(&fs::read_to_string(&report).unwrap()).unwrap();
    assert!(parsed.passed());
}

#[test]
fn verify_sampled_run_passes() {
    let dir = TempDir::new().unwrap();
    let input = construct(dir.path());
    let out = gq416(&["verify", &input, "--sample", "20000", "--nonedges", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("overall: PASS"));
}

#[test]
fn corrupted_file_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let input = construct(dir.path());
    let text = fs::read_to_string(&input).unwrap();
    let broken: String = text.lines().take(40).map(|l| format!("{l}\n")).collect::<String>() + "garbage line\n";
    fs::write(&input, broken).unwrap();
    let out = gq416(&["verify", &input, "--suite", "srg"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parsing"));
}

#[test]
fn replay_all_passes() {
    let out = gq416(&["replay", "--all"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).matches("[PASS]").count(), 6);
}

#[test]
fn replay_of_the_n5_case_ends_in_contradiction() {
    let out = gq416(&["replay", "L3.4"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim_end().ends_with("feasible set empty"));
}

#[test]
fn replay_json_lists_steps() {
    let out = gq416(&["replay", "l3.13", "--format", "json"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json[0]["lemma"], "L3.13");
    assert!(!json[0]["steps"].as_array().unwrap().is_empty());
}

#[test]
fn unknown_lemma_is_rejected() {
    let out = gq416(&["replay", "L9.9"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_suite_is_rejected() {
    let dir = TempDir::new().unwrap();
    let input = construct(dir.path());
    let out = gq416(&["verify", &input, "--suite", "nope"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn export_design_writes_68_distinct_blocks_thrice() {
    let dir = TempDir::new().unwrap();
    let input = construct(dir.path());
    let out = gq416(&["export-design", &input]);
    assert!(out.status.success());
    let d = gq_core::design::parse_design(&stdout(&out)).unwrap();
    assert_eq!((d.v(), d.k(), d.block_count(), d.distinct_block_count()), (17, 5, 204, 68));
}
