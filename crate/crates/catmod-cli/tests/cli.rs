use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn catmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catmod")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = catmod(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn all_pass(r: &Value) -> bool {
    r["verdicts"].as_array().unwrap().iter().all(|v| v["pass"] == true)
}

#[test]
fn homcount_small_vic() {
    let r = report(&["--cat", "vic", "--p", "2", "homcount", "--d", "1", "--n", "2"]);
    assert_eq!(r["results"][0]["count"], 6);
    assert_eq!(r["verdicts"][0]["claim_id"], "hom-count");
    assert!(all_pass(&r));
}

#[test]
fn bounds_csv_has_fixed_header() {
    let out = catmod(&["bounds", "--family", "mcg", "--i", "2", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,i,d,r,bound,formula_id"));
    let bounds: Vec<&str> = lines.map(|l| l.split(',').nth(4).unwrap()).collect();
    assert_eq!(bounds, ["24", "72"]);
}

#[test]
fn bounds_with_no_match_is_invalid() {
    let out = catmod(&["bounds", "--family", "braid"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn full_group_is_transitive_on_hom() {
    let r = report(&["double-cosets", "--n", "3", "--a", "0", "--d", "1"]);
    assert_eq!(r["results"][0]["orbit_count"], 1);
    assert!(all_pass(&r));
}

fn only_file(dir: &Path) -> std::path::PathBuf {
    let mut entries: Vec<_> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(entries.len(), 1);
    entries.pop().unwrap()
}

#[test]
fn cache_round_trip_and_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = report(&["--cache-dir", d, "--no-timing", "enumerate", "--d", "1", "--n", "3"]);
    assert_eq!(first["results"].as_array().unwrap().len(), 28);
    assert!(all_pass(&first));
    let second = report(&["--cache-dir", d, "--no-timing", "enumerate", "--d", "1", "--n", "3"]);
    assert_eq!(first, second);
}

#[test]
fn empty_hom_is_cached_with_zero_count() {
    let dir = tempfile::tempdir().unwrap();
    let r = report(&["--cache-dir", dir.path().to_str().unwrap(), "enumerate", "--d", "3", "--n", "2"]);
    assert!(r["results"].as_array().unwrap().is_empty());
    let text = std::fs::read_to_string(only_file(dir.path())).unwrap();
    assert!(text.lines().next().unwrap().ends_with(" 0"));
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn tampered_cache_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    report(&["--cache-dir", d, "enumerate", "--d", "1", "--n", "3"]);
    let path = only_file(dir.path());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines: Vec<&str> = text.lines().collect();
    let header = lines[0].replace(" 28", " 27");
    lines[0] = &header;
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    let out = catmod(&["--cache-dir", d, "enumerate", "--d", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("27"));
}

#[test]
fn bad_unit_group_exits_1() {
    let out = catmod(&["--cat", "vicu", "--p", "5", "--units", "1,2", "homcount", "--d", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_flag_exits_1_and_help_exits_0() {
    assert_eq!(catmod(&["homcount", "--d", "1", "--n", "1", "--frobnicate"]).status.code(), Some(1));
    assert_eq!(catmod(&["--help"]).status.code(), Some(0));
}

#[test]
fn exceeded_budget_exits_2() {
    let out = catmod(&["--budget-hom", "3", "homcount", "--d", "1", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn no_timing_reports_are_byte_identical() {
    let args = ["--no-timing", "--window", "3", "h0", "--module", "tensor:1,1"];
    let a = catmod(&args);
    let b = catmod(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.conf");
    std::fs::write(&path, "# shared settings\ncat = vic\np = 3\n").unwrap();
    let conf = path.to_str().unwrap();
    let from_file = report(&["--config", conf, "homcount", "--d", "1", "--n", "2"]);
    assert_eq!(from_file["results"][0]["count"], 24);
    let overridden = report(&["--config", conf, "--p", "2", "homcount", "--d", "1", "--n", "2"]);
    assert_eq!(overridden["results"][0]["count"], 6);
    assert_ne!(from_file["config_hash"], overridden["config_hash"]);
}

#[test]
fn worker_count_does_not_change_the_hash() {
    let one = report(&["--no-timing", "--workers", "1", "homcount", "--d", "1", "--n", "2"]);
    let two = report(&["--no-timing", "--workers", "2", "homcount", "--d", "1", "--n", "2"]);
    assert_eq!(one, two);
}

#[test]
fn central_homology_of_m0() {
    let r = report(&["central-homology", "--module", "rep:0", "--i", "-1", "--n", "2"]);
    assert_eq!(r["results"][0]["homology"], 0);
    assert!(all_pass(&r));
}

#[test]
fn certify_smoke_profile_passes() {
    let r = report(&["--no-timing", "certify-all", "--profile", "smoke"]);
    let ids: Vec<&str> = r["verdicts"].as_array().unwrap().iter().map(|v| v["claim_id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["category-laws", "hom-count", "bounds-strings"]);
    assert!(all_pass(&r));
}
