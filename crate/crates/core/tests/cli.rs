use std::process::{Command, Output};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superlefschetz")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn octonions_reject_rank_two() {
    assert_eq!(cli(&["--algebra", "O", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn suite_algebra_mismatch_is_a_config_error() {
    assert_eq!(cli(&["--algebra", "R", "--suite", "kahler"]).status.code(), Some(2));
    assert_eq!(cli(&["--algebra", "C", "--suite", "hyperkahler"]).status.code(), Some(2));
    assert_eq!(cli(&["--algebra", "R", "--suite", "semiflat"]).status.code(), Some(2));
    assert_eq!(cli(&["--algebra", "X"]).status.code(), Some(2));
    assert_eq!(cli(&["--suite", "nope"]).status.code(), Some(2));
    assert_eq!(cli(&["--report", "xml"]).status.code(), Some(2));
    assert_eq!(cli(&["--bogus"]).status.code(), Some(2));
}

#[test]
fn lefschetz_torus_checks_pass() {
    let o = cli(&["--algebra", "C", "--n", "1", "--suite", "lefschetz"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("lefschetz.")).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines.iter().all(|l| l.contains(" pass (")));
}

#[test]
fn failing_check_exits_one() {
    let o = cli(&["--algebra", "H", "--n", "1", "--suite", "lie"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("lie.H.tau-star.image.H fail"));
}

#[test]
fn json_reports_are_byte_identical() {
    let args = ["--algebra", "C", "--n", "1", "--seed", "5", "--report", "json"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(v["header"]["counts"]["total"].as_u64().unwrap() as usize, checks.len());
    let ids: Vec<&str> = checks.iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(checks.iter().all(|c| c["millis"].is_null()));
}

#[test]
fn timings_fill_millis() {
    let o = cli(&["--algebra", "R", "--suite", "normed", "--report", "json", "--timings"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["millis"].is_u64()));
}

#[test]
fn listing_matches_report_ids() {
    let list = cli(&["--algebra", "C", "--n", "1", "--list"]);
    assert_eq!(list.status.code(), Some(0));
    let listing = stdout(&list);
    assert!(listing.lines().any(|l| l == "prop39.C.n1.eps1-eps2 (Prop 3.9)"));
    assert_eq!(listing, stdout(&cli(&["--algebra", "C", "--n", "1", "--list"])));
    let listed: Vec<&str> = listing.lines().map(|l| l.split(' ').next().unwrap()).collect();
    let report = stdout(&cli(&["--algebra", "C", "--n", "1"]));
    let ran: Vec<&str> = report.lines().filter(|l| !l.starts_with('#') && !l.starts_with(' ')).map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(listed, ran);
}

#[test]
fn real_plane_registry_size() {
    let out = stdout(&cli(&["--algebra", "R", "--n", "2", "--list"]));
    assert!(out.lines().count() >= 20);
}

#[test]
fn out_writes_report_file() {
    let path = std::env::temp_dir().join(format!("superlefschetz-{}.json", std::process::id()));
    let o = cli(&["--algebra", "R", "--suite", "normed", "--report", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["header"]["config"]["algebra"], "R");
    std::fs::remove_file(path).unwrap();
}
