use std::path::Path;
use std::process::{Command, Output};

use wbt_core::export::to_fold;
use wbt_core::families::shifted_t31;
use wbt_core::molecule::ConvexPolygon;
use wbt_core::FamilyParams;

fn wbt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wbt"))
        .args(args)
        .env("WB_LOG_LEVEL", "error")
        .output()
        .unwrap()
}

fn p(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn generate_then_validate_passes() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "t31.fold");
    let o = wbt(&["generate", "--family", "T31", "--triangle", "3,4,5", "--rows", "3", "--cols", "3", "-o", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = wbt(&["validate", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("pass"));
}

#[test]
fn naive_shifted_tiling_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "shifted.fold");
    let t = ConvexPolygon::triangle_from_sides([4.0, 5.0, 6.0]).unwrap();
    std::fs::write(&f, to_fold(&shifted_t31(&FamilyParams::triangle(&t)).unwrap())).unwrap();
    let o = wbt(&["validate", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stdout).contains("hinge_matching"));
    let o = wbt(&["validate", "--json", &f]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], false);
}

#[test]
fn scalene_et31_exits_two() {
    let o = wbt(&["generate", "--family", "ET31", "--triangle", "3,4,5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("equilateral required"));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(wbt(&["generate", "--family", "T99", "--triangle", "3,4,5"]).status.code(), Some(2));
    assert_eq!(wbt(&["generate", "--family", "T31", "--triangle", "3,4"]).status.code(), Some(2));
    assert_eq!(wbt(&["generate", "--family", "T31", "--triangle", "1,1,5"]).status.code(), Some(2));
    assert_eq!(wbt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(wbt(&["--help"]).status.code(), Some(0));
}

#[test]
fn missing_file_exits_three() {
    assert_eq!(wbt(&["validate", "/nonexistent/x.fold"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let out = p(dir.path(), "no/such/dir/out.fold");
    let o = wbt(&["generate", "--family", "T31", "--triangle", "eq:2", "-o", &out]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_fold_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "bad.fold");
    std::fs::write(&f, b"{\"vertices_coords\": [[0,0]").unwrap();
    assert_eq!(wbt(&["validate", &f]).status.code(), Some(2));
}

#[test]
fn stdout_matches_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "a.fold");
    wbt(&["generate", "--family", "ET32", "--triangle", "eq:2", "-o", &f]);
    let o = wbt(&["generate", "--family", "ET32", "--triangle", "eq:2"]);
    assert_eq!(std::fs::read(&f).unwrap(), o.stdout);
}

#[test]
fn export_svg_and_fold() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "t.fold");
    wbt(&["generate", "--family", "T31", "--triangle", "eq:2", "-o", &f]);
    let svg = p(dir.path(), "t.svg");
    assert_eq!(wbt(&["export", &f, "-o", &svg]).status.code(), Some(0));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("<svg") && text.contains(r#"class="floor""#));
    let again = p(dir.path(), "t2.fold");
    assert_eq!(wbt(&["export", &f, "-o", &again]).status.code(), Some(0));
    assert_eq!(std::fs::read(&f).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn families_lists_eleven() {
    let o = wbt(&["families", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 11);
    let o = wbt(&["families"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().count(), 11);
}

#[test]
fn search_writes_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let f = p(dir.path(), "c.jsonl");
    let o = wbt(&["search", "--triangle", "eq:2", "--hinges", "3", "--max-copies", "2", "--budget", "30", "-o", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&f).unwrap();
    assert!(text.lines().count() >= 2);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["signature"].as_str().unwrap().starts_with("floors="));
    }
    assert_eq!(wbt(&["search", "--triangle", "eq:2", "--hinges", "0"]).status.code(), Some(2));
}
