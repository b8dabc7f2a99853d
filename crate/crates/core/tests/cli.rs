use std::process::{Command, Output};

use serde_json::Value;

fn fockspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fockspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn spectrum_disk_and_origin() {
    let o = fockspec(&["spectrum", "--g", "3z^2 + z"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "fockspec.spectrum/1");
    assert_eq!(v["kind"], "disk");
    assert_eq!(v["radius"], 3.0);
    assert_eq!(v["config"]["g"], "z + 3z^2");

    let v = json(&fockspec(&["spectrum", "--g", "z", "--A", "2"]));
    assert_eq!(v["kind"], "origin");
    assert_eq!(v["provenance"], "compact_case");
    assert!(v.get("radius").is_none());

    let v = json(&fockspec(&["spectrum", "--g", "(0+2i)z^2", "--alpha", "0.5"]));
    assert_eq!(v["radius"], 4.0);
}

#[test]
fn unbounded_symbol_exits_2() {
    let o = fockspec(&["spectrum", "--g", "z^3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unbounded"));
    assert!(o.stdout.is_empty());
}

#[test]
fn parse_errors_point_at_the_byte() {
    let o = fockspec(&["spectrum", "--g", "z^^2"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.contains("byte 2"), "{e}");
    assert!(e.contains("\n  z^^2\n    ^"), "{e}");
}

#[test]
fn constant_term_is_dropped_with_a_note() {
    let o = fockspec(&["spectrum", "--g", "5 + z^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("constant"));
    assert_eq!(json(&o)["config"]["g"], "z^2");
}

#[test]
fn help_and_version_succeed_bad_flags_fail() {
    assert_eq!(fockspec(&["--help"]).status.code(), Some(0));
    assert_eq!(fockspec(&["--version"]).status.code(), Some(0));
    assert_eq!(fockspec(&["spectrum", "--bogus"]).status.code(), Some(1));
    assert_eq!(fockspec(&["verify", "nonsense"]).status.code(), Some(1));
    assert_eq!(fockspec(&["spectrum", "--p", "0.5"]).status.code(), Some(1));
    assert_eq!(fockspec(&["verify", "lp", "--family", ""]).status.code(), Some(1));
}

#[test]
fn scan_csv_layout_and_verdicts() {
    let o = fockspec(&["scan", "--lambda", "2", "--lambda", "(0+0.5i)", "--lambda", "-3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.split("\r\n").collect();
    assert_eq!(lines[0], "re_lambda,im_lambda,verdict,probe_ratio");
    assert!(lines[1].starts_with("2.0,0.0,member,"));
    assert!(lines[2].starts_with("0.0,0.5,non_member,"));
    assert!(lines[3].starts_with("-3.0,0.0,member,"));
    assert_eq!(lines[4], "");
}

#[test]
fn scan_json_rows_match_grid() {
    let v = json(&fockspec(&[
        "scan",
        "--grid-radii",
        "0.5,2",
        "--grid-count",
        "4",
        "--format",
        "json",
        "--order",
        "48",
    ]));
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let r = row["re_lambda"]
            .as_f64()
            .unwrap()
            .hypot(row["im_lambda"].as_f64().unwrap());
        let want = if r < 1.0 { "non_member" } else { "member" };
        assert_eq!(row["verdict"], want);
    }
}

#[test]
fn norm_apply_resolvent() {
    let v = json(&fockspec(&["norm", "--f", "z"]));
    // ||z||^2 = int |z|^2 e^{-2|z|^2} dA = pi / 4
    let norm = v["rows"][0]["norm"].as_f64().unwrap();
    assert!((norm - (std::f64::consts::PI / 4.0).sqrt()).abs() < 1e-13);

    let o = fockspec(&["apply", "--g", "z^2", "--f", "1 + z", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "k,re,im\r\n0,0.0,0.0\r\n1,0.0,0.0\r\n2,1.0,0.0\r\n3,0.6666666666666666,0.0\r\n"
    );

    let v = json(&fockspec(&["resolvent", "--lambda", "2", "--h", "1", "--order", "6"]));
    let re: Vec<f64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["re"].as_f64().unwrap())
        .collect();
    // e^{z^2 / 2}
    assert_eq!(re, [1.0, 0.0, 0.5, 0.0, 0.125, 0.0, 1.0 / 48.0]);
}

#[test]
fn verify_suites_report_status() {
    for suite in ["boundedness", "boundary", "weighted-lp"] {
        let o = fockspec(&["verify", suite, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stderr(&o));
        assert_eq!(json(&o)["status"], "PASS");
        assert!(stderr(&o).starts_with(&format!("verify {suite}: PASS")));
    }
    let o = fockspec(&["verify", "lp", "--p", "2", "--alpha", "0.5", "--A", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("index,function,ratio,ratio_refined\r\n"));
}

#[test]
fn verify_failure_exits_3() {
    // a cubic at A = 2 is expected to diverge, so this passes
    let o = fockspec(&["verify", "boundedness", "--g", "z^3", "--columns", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 202);
    // R = 2 is too small for the decay threshold
    let o = fockspec(&["verify", "boundary", "--radii", "1,2", "--f", "1"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("FAIL"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("fockspec-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("spectrum.json");
    let args = ["spectrum", "--g", "z^2 + z"];
    let direct = fockspec(&args);
    let o = fockspec(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn repeated_runs_are_identical() {
    let args = ["scan", "--grid-radii", "0.8,1.5", "--grid-count", "6", "--order", "40"];
    assert_eq!(fockspec(&args).stdout, fockspec(&args).stdout);
}
