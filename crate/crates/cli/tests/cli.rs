use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn galnil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galnil"))
        .args(args)
        .output()
        .expect("runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    })
}

fn corpus_file(lines: &[&str]) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    for l in lines {
        writeln!(f, "{l}").unwrap();
    }
    f
}

#[test]
fn gaussian_quadratic_is_nilpotent() {
    let out = galnil(&["--poly", "1 0 1", "--nilpotent"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdicts"]["nilpotent"], Value::Bool(true));
}

#[test]
fn pure_cubic_against_oracle() {
    let out = galnil(&["--poly", "-2 0 0 1", "--nilpotent", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdicts"]["nilpotent"], Value::Bool(false));
    assert_eq!(r["oracle"]["order"], "6");
    assert_eq!(r["oracle_agrees"], Value::Bool(true));
    assert_eq!(r["towers"][0]["accepted"], Value::Bool(false));
}

#[test]
fn s5_quintic_is_not_in_gamma_4() {
    let out = galnil(&["--poly", "-1 -1 0 0 0 1", "--gamma-d", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdicts"]["gamma_d"]["4"], Value::Bool(false));
}

#[test]
fn expression_syntax_matches_coefficients() {
    let a = json(&galnil(&["--poly", "x^3-2", "--primes"]));
    let b = json(&galnil(&["--poly", "-2 0 0 1", "--primes"]));
    assert_eq!(a["input"]["coeffs"], b["input"]["coeffs"]);
    assert_eq!(a["verdicts"]["primes"], serde_json::json!([2, 3]));
}

#[test]
fn human_output() {
    let out = galnil(&["--poly", "x^4+1", "--nilpotent", "--human"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("nilpotent: true"), "{text}");
    assert!(text.contains("tower p = 2"), "{text}");
}

#[test]
fn properties_by_name_on_both_routes() {
    for route in ["tower", "oracle"] {
        let out = galnil(&[
            "--poly",
            "x^3-2",
            "--property",
            "nilpotent",
            "--property",
            "gamma-5",
            "--property",
            "primes",
            "--route",
            route,
        ]);
        assert_eq!(out.status.code(), Some(0));
        let r = json(&out);
        assert_eq!(
            r["values"],
            serde_json::json!([["nilpotent", false], ["gamma-5", true], ["primes", [2, 3]]])
        );
    }
    let out = galnil(&["--poly", "x^3-2", "--property", "abelian"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["--poly", "1 2 x"][..],
        &["--poly", "5"],
        &["--poly", "x^^2"],
        &[],
    ] {
        let out = galnil(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn exhausted_budget_exits_3() {
    let out = galnil(&["--poly", "x^5-x-1", "--primes", "--budget-constant", "0"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(json(&out)["undecided"].as_str().unwrap().contains("budget"));
}

#[test]
fn bundled_corpus_agrees() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/corpus.jsonl");
    let out = galnil(&["--corpus", path.to_str().unwrap(), "--jobs", "4"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = json(&out);
    assert_eq!(r["disagree"], 0);
    assert!(r["entries"].as_u64().unwrap() >= 40);
}

#[test]
fn empty_corpus_is_fine() {
    let f = corpus_file(&["# nothing here", ""]);
    let out = galnil(&["--corpus", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["entries"], 0);
}

#[test]
fn wrong_expectation_exits_1() {
    let f = corpus_file(&[
        r#"{"poly": "x^2+1", "expect": {"nilpotent": true, "solvable": true, "gamma5": true, "primes": [2]}}"#,
        r#"{"poly": "x^3-2", "expect": {"nilpotent": true, "solvable": true, "gamma5": true, "primes": [2, 3]}}"#,
    ]);
    let out = galnil(&["--corpus", f.path().to_str().unwrap(), "--human"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1 agree, 1 disagree"), "{text}");
}

#[test]
fn malformed_corpus_exits_2() {
    let f = corpus_file(&["{\"poly\": 3}"]);
    assert_eq!(
        galnil(&["--corpus", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn expect_line_round_trips_as_corpus() {
    let out = galnil(&["--poly", "x^4-2", "--expect-from-oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    let f = corpus_file(&[line.trim()]);
    assert_eq!(
        galnil(&["--corpus", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}
