use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use fanocheck::corpus::Report;

fn fanocheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fanocheck")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn shipped_corpus() -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", "paper_examples.json"].iter().collect();
    p.to_str().unwrap().to_string()
}

fn temp_corpus(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn fsplit_fermat_quartic() {
    let out = fanocheck(&["fsplit", "-p", "7", "--vars", "x0,x1,x2,x3,x4", "--poly", "x0^4+x1^4+x2^4+x3^4+x4^4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "NotFSplit\n");
}

#[test]
fn fsplit_weighted_and_witness() {
    let out = fanocheck(&["fsplit", "-p", "11", "--vars", "x0,x1,x2,x3,y:3", "--poly", "x0^6+x1^6+x2^6+x3^6+y^2"]);
    assert_eq!(stdout(&out), "NotFSplit\n");
    let out = fanocheck(&["fsplit", "-p", "3", "--vars", "x,y,z", "--poly", "x*y + z^2"]);
    assert_eq!(stdout(&out), "FSplit\nwitness: x^2*y^2\n");
    let out = fanocheck(&["fsplit", "-p", "5", "--vars", "x0,x1", "--poly", "x0^2+x1^2", "--json"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["status"], "FSplit");
    assert_eq!(json["degree"], serde_json::json!([2]));
    assert_eq!(json["witness"], "x0^4*x1^4");
}

#[test]
fn delta1_and_probe() {
    let out = fanocheck(&["delta1", "-p", "2", "--vars", "x,y,z", "--poly", "x+y+z"]);
    assert_eq!(stdout(&out), "x*y + x*z + y*z\n");
    let out = fanocheck(&["delta1", "-p", "2", "--vars", "x,y", "--poly", "x+y", "--probe", "0,1,2"]);
    assert_eq!(stdout(&out), "x*y\n");
    let out = fanocheck(&["delta1", "-p", "2", "--vars", "x,y", "--poly", "x+y", "--probe", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn smooth_verdicts() {
    let out = fanocheck(&[
        "smooth",
        "-p",
        "11",
        "--ambient",
        "P(1,1,1,1,3)",
        "--vars",
        "x0,x1,x2,x3,y",
        "--poly",
        "x0^6+x1^6+x2^6+x3^6+y^2",
    ]);
    assert_eq!(stdout(&out), "Smooth\n");
    let out = fanocheck(&["smooth", "-p", "2", "--ambient", "P2 x P2", "--poly", "x0*y0^2+x1*y1^2+x2*y2^2", "--cone"]);
    assert_eq!(stdout(&out), "SmoothAwayFromIrrelevant\n");
    let out = fanocheck(&["smooth", "-p", "3", "--ambient", "P1", "--poly", "x0^2"]);
    assert_eq!(stdout(&out), "Singular\n");
}

#[test]
fn chow_commands() {
    let out = fanocheck(&["chow", "--base", "1,1,1", "--expr", "deg((2*h2+2*h3)*(2*h1+2*h3)*(2*h1+2*h2))"]);
    assert_eq!(stdout(&out), "16\n");
    let out = fanocheck(&["chow", "--base", "1,1", "--bundle", "0,0;1,0;0,1", "--canonical"]);
    assert_eq!(stdout(&out), "-3*xi - h1 - h2\n");
    let out = fanocheck(&["chow", "--base", "1", "--bundle", "0;-1", "--expr", "xi*xi"]);
    assert_eq!(stdout(&out), "-h1*xi\n");
    let out = fanocheck(&["chow", "--base", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lattice_langer_line() {
    let out = fanocheck(&["lattice", "exc", "--points", "7", "--langer"]);
    assert_eq!(stdout(&out), "(-1)-classes: 56; compatible: 7; (-2)-classes: 7; disjoint: yes\n");
    let out = fanocheck(&["lattice", "exc", "--points", "6"]);
    assert_eq!(stdout(&out), "(-1)-classes: 27\n");
    let out = fanocheck(&["lattice", "pgl"]);
    assert_eq!(stdout(&out), "order: 168; full plane fixed: yes\n");
    let out = fanocheck(&["lattice", "orbit", "--points", "1,0,0;0,1,0;0,0,1;1,1,1"]);
    assert_eq!(stdout(&out), "orbit: 7; stabilizer: 24\n");
}

#[test]
fn shipped_corpus_passes() {
    let out = fanocheck(&["verify", &shipped_corpus()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
}

#[test]
fn wrong_expectation_fails_with_entry_name() {
    let corpus = temp_corpus(
        r#"{"entries": [{"name": "wrong-quartic", "prime": 7,
            "ambient": {"factors": [{"weights": [1,1,1,1,1], "vars": ["x0","x1","x2","x3","x4"]}]},
            "polynomial": "x0^4+x1^4+x2^4+x3^4+x4^4",
            "checks": [{"kind": "fsplit", "expect": "FSplit", "params": {}}], "paper_ref": ""}]}"#,
    );
    let out = fanocheck(&["verify", corpus.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.rows.len(), 1);
    assert!(!report.rows[0].pass);
    assert_eq!(report.rows[0].name, "wrong-quartic");
    assert_eq!(report.rows[0].actual, "NotFSplit");
}

#[test]
fn empty_corpus_is_a_pass() {
    let corpus = temp_corpus(r#"{"entries": []}"#);
    let out = fanocheck(&["verify", corpus.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&stdout(&out)).unwrap();
    assert!(report.rows.is_empty());
    assert_eq!(report.summary.total, 0);
}

#[test]
fn input_errors_exit_with_two() {
    let corpus = temp_corpus(r#"{"entries": [{"name": "typo", "prime": 7, "ambient": {"factors": []}}]}"#);
    let out = fanocheck(&["verify", corpus.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("typo") && err.contains("polynomial"), "{err}");

    let out = fanocheck(&["verify", "/nonexistent/corpus.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fanocheck(&["fsplit", "-p", "4", "--vars", "x", "--poly", "x"]);
    assert_eq!(out.status.code(), Some(2));
    let out = fanocheck(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parallel_reports_are_byte_identical() {
    let corpus = shipped_corpus();
    let run = |jobs: &str| stdout(&fanocheck(&["verify", &corpus, "--jobs", jobs, "--format", "json", "--no-timings"]));
    let one = run("1");
    for jobs in ["2", "4", "8"] {
        assert_eq!(run(jobs), one);
    }
}

#[test]
fn json_report_round_trips() {
    let out = fanocheck(&["verify", &shipped_corpus(), "--format", "json", "--jobs", "3"]);
    let text = stdout(&out);
    let report = Report::from_json(&text).unwrap();
    assert_eq!(report.to_json() + "\n", text);
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    assert_eq!(report.summary.total, report.rows.len());
}
