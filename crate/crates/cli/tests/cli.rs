use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klein-forge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["checks"].as_array().unwrap().iter().map(|c| (c["name"].as_str().unwrap().into(), c["status"].as_str().unwrap().into())).collect()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_vec(v).unwrap()).unwrap();
    p.to_str().unwrap().into()
}

fn flags(n_points: usize, blocks: &[&[usize]]) -> Value {
    let rows: Vec<String> =
        (0..n_points).map(|p| blocks.iter().map(|b| if b.contains(&p) { '1' } else { '0' }).collect()).collect();
    serde_json::json!({ "n_points": n_points, "n_blocks": blocks.len(), "flags": rows })
}

const FANO: [&[usize]; 7] = [&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[1, 3, 5], &[1, 4, 6], &[2, 3, 6], &[2, 4, 5]];

#[test]
fn verify_klein_passes_and_is_deterministic() {
    let a = forge(&["verify", "klein"]);
    assert_eq!(a.status.code(), Some(0));
    let v = json(&a);
    assert_eq!(v["command"], "verify klein");
    assert!(statuses(&v).iter().all(|(_, s)| s != "FAIL"));
    assert!(statuses(&v).contains(&("klein.t4".into(), "PASS".into())));
    assert_eq!(a.stdout, forge(&["verify", "klein"]).stdout);
}

#[test]
fn failing_checks_exit_with_one() {
    // The GR tangent dimension disagrees with its golden value.
    let out = forge(&["verify", "realize", "--seeds", "8"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert!(statuses(&v).contains(&("real.gr_tangent".into(), "FAIL".into())));
    assert!(statuses(&v).contains(&("real.fano".into(), "PASS".into())));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(forge(&["bogus"]).status.code(), Some(2));
    assert_eq!(forge(&["verify", "klein", "--nope"]).status.code(), Some(2));
    assert_eq!(forge(&["census", "--input", "/nonexistent/lines.json"]).status.code(), Some(2));
    assert_eq!(forge(&["genlines", "--seed", "0"]).status.code(), Some(2));
}

#[test]
fn timings_are_opt_in() {
    let plain = json(&forge(&["verify", "plucker"]));
    assert!(plain.get("timings_ms").is_none());
    let timed = json(&forge(&["--timings", "verify", "plucker"]));
    assert!(timed["timings_ms"]["plucker"].is_u64());
    // The flag does not change the inputs digest.
    assert_eq!(plain["inputs_digest"], timed["inputs_digest"]);
}

#[test]
fn pretty_output_lists_checks() {
    let out = forge(&["--pretty", "verify", "kprime"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("verify kprime"));
    assert!(text.contains("PASS kprime.t3: expected 12, found 12"));
}

#[test]
fn census_of_kprime() {
    let v = json(&forge(&["census", "--model", "kprime"]));
    assert_eq!(v["data"]["tvector"]["3"], 12);
    assert_eq!(v["data"]["tvector"]["2"], 30);
}

#[test]
fn census_from_a_lines_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = serde_json::json!({
        "field": { "minpoly": ["0"], "root": [0.0, 0.0] },
        "lines": [[["1"], ["0"], ["0"]], [["0"], ["1"], ["0"]], [["1"], ["1"], ["0"]], [["1"], ["2"], ["-5"]]],
    });
    let path = write(dir.path(), "lines.json", &input);
    let out = forge(&["census", "--input", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["data"]["tvector"]["3"], 1);
    assert_eq!(v["data"]["tvector"]["2"], 3);
}

#[test]
fn iso_and_realize_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "fano.json", &flags(7, &FANO));
    let relabeled: Vec<Vec<usize>> = FANO.iter().rev().map(|b| b.iter().map(|p| (p + 3) % 7).collect()).collect();
    let refs: Vec<&[usize]> = relabeled.iter().map(Vec::as_slice).collect();
    let b = write(dir.path(), "fano2.json", &flags(7, &refs));
    let v = json(&forge(&["iso", "--a", &a, "--b", &b]));
    assert_eq!(v["data"]["isomorphic"], true);

    let out = forge(&["realize", "--input", &a, "--seeds", "8"]);
    assert_eq!(json(&out)["data"]["success"], false);

    let tri = write(dir.path(), "tri.json", &flags(3, &[&[0, 1], &[1, 2], &[0, 2]]));
    let svg = dir.path().join("tri.svg");
    let out = forge(&["realize", "--input", &tri, "--seeds", "4", "--svg", svg.to_str().unwrap()]);
    assert_eq!(json(&out)["data"]["success"], true);
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<circle"));
}

#[test]
fn gr_export_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (p, q) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for path in [&p, &q] {
        let out = forge(&["export", "--model", "gr", "--svg", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&p).unwrap();
    assert_eq!(a, std::fs::read(&q).unwrap());
    let text = String::from_utf8(a).unwrap();
    // Two axes plus the 21 lines; 21 quadruple points.
    assert_eq!(text.matches("<line").count(), 23);
    assert_eq!(text.matches("<circle").count(), 21);
}

#[test]
fn derived_config_round_trips_through_export() {
    let dir = tempfile::tempdir().unwrap();
    let out = forge(&["build", "gr-derived", "--pair", "23", "--what", "28"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cfg = write(dir.path(), "d28.json", &v["data"]);
    let svg = dir.path().join("d28.svg");
    let out = forge(&["export", "--input", &cfg, "--svg", svg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<circle").count(), 28);

    // Tampered incidences are rejected.
    let mut bad = v["data"].clone();
    let row = bad["incidence"]["flags"][0].as_str().unwrap().replace('1', "0");
    bad["incidence"]["flags"][0] = Value::String(row);
    let cfg = write(dir.path(), "bad.json", &bad);
    assert_eq!(forge(&["export", "--input", &cfg, "--svg", svg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn genlines_reports_one_based_labels() {
    let v = json(&forge(&["genlines", "--seed", "1,2,3,4"]));
    assert_eq!(v["data"]["generates"], false);
    assert_eq!(v["data"]["lines"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn conjecture_report_is_labelled_experimental() {
    let out = forge(&["conjecture", "--steps", "5", "--samples", "2"]);
    let v = json(&out);
    assert_eq!(v["data"]["label"], "EXPERIMENTAL");
    assert_eq!(v["data"]["samples"].as_array().unwrap().len(), 3);
    assert_eq!(out.stdout, forge(&["conjecture", "--steps", "5", "--samples", "2"]).stdout);
}
