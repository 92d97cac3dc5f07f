use std::process::{Command, Output};

use serde_json::Value;

fn ccckit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccckit")).args(args).env_remove("CCCKIT_SEED").output().expect("binary runs")
}

const FAMILIES: [&str; 16] = [
    "perm",
    "gl",
    "sl",
    "o",
    "so",
    "e",
    "sp",
    "onn",
    "braid",
    "aut-free",
    "iet",
    "pl",
    "wreath-tower",
    "closure",
    "product",
    "derived",
];

#[test]
fn iet_json_report_passes() {
    let out = ccckit(&["--family", "iet", "--size", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["family"], "iet");
    assert_eq!(v["bounded"], true);
    assert_eq!(v["params"]["size"], 2);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn unknown_family_exits_2() {
    let out = ccckit(&["--family", "nosuch"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nosuch"));
}

#[test]
fn seeded_runs_are_byte_identical() {
    let a = ccckit(&["--family", "braid", "--size", "2", "--seed", "7"]);
    let b = ccckit(&["--family", "braid", "--size", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ccckit")).args(["--family", "perm"]).env("CCCKIT_SEED", "11").output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"], 11);
}

#[test]
fn listing_covers_every_family_in_both_formats() {
    let text = ccckit(&["--list", "--format", "text"]);
    assert_eq!(text.status.code(), Some(0));
    let text = String::from_utf8(text.stdout).unwrap();
    for f in FAMILIES {
        assert!(text.lines().any(|l| l.starts_with(&format!("{f} "))), "{f} missing from listing");
    }
    assert!(text.contains("1 <= p <= P"));

    let json = ccckit(&["--list", "--format", "json"]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    let ids: Vec<&str> = v["families"].as_array().unwrap().iter().map(|f| f["id"].as_str().unwrap()).collect();
    assert_eq!(ids, FAMILIES);
    assert!(v["bound_semantics"].as_str().unwrap().contains("bounded"));
}

#[test]
fn text_format_and_out_file() {
    let dir = std::env::temp_dir().join(format!("ccckit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("perm.txt");
    let out = ccckit(&["--family", "perm", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.starts_with("family perm"));
    assert!(body.lines().all(|l| !l.starts_with("FAIL")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unwritable_output_exits_3() {
    let out = ccckit(&["--family", "perm", "--out", "/nonexistent-dir/sub/report.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bound_zero_is_rejected() {
    let out = ccckit(&["--family", "iet", "--bound", "0"]);
    assert!(!out.status.success());
}
