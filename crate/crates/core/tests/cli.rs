//! End-to-end checks of the command-line interface: exit codes, output
//! shape, and the documented JSON schema.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hitchin-ruled"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn tables_markdown_contains_frozen_rows() {
    let out = run(&["tables", "--genus-min", "2", "--genus-max", "2", "--n-min", "1", "--n-max", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("| 2 | 2 | 5 | 7 | 5 | 3 | 0 | n/a: n<=2 | n/a: n<=2 |"), "{text}");
    assert!(text.contains("| 3 | 2 | 10 | 16 | 10 | 3 | 0 | 7 | 7 |"), "{text}");
}

#[test]
fn tables_formats_are_stable_and_consistent() {
    let base = ["tables", "--genus-min", "2", "--genus-max", "3", "--n-min", "1", "--n-max", "4"];
    let md1 = stdout(&run(&[&base[..], &["--format", "markdown"]].concat()));
    let md2 = stdout(&run(&[&base[..], &["--format", "markdown"]].concat()));
    assert_eq!(md1, md2, "markdown output must be byte-stable");
    let csv = stdout(&run(&[&base[..], &["--format", "csv"]].concat()));
    let json = stdout(&run(&[&base[..], &["--format", "json"]].concat()));
    // Same cells everywhere.
    for cell in ["10", "16", "n/a: n<=2", "29"] {
        assert!(md1.contains(cell), "markdown missing {cell}");
        assert!(csv.contains(cell), "csv missing {cell}");
        assert!(json.contains(cell), "json missing {cell}");
    }
    serde_json::from_str::<serde_json::Value>(&json).expect("json output parses");
}

#[test]
fn bad_ranges_exit_2() {
    for args in [
        vec!["tables", "--genus-min", "1"],
        vec!["tables", "--genus-max", "65"],
        vec!["tables", "--n-min", "5", "--n-max", "2"],
        vec!["verify", "--genus-min", "6", "--genus-max", "2"],
        vec!["ampleness", "--n-max", "17"],
        vec!["elm", "--charts", "1"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn verify_small_run_exits_0() {
    let out = run(&["verify", "--seed", "3", "--atlases", "5", "--tails", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("PASS pairing symmetry and bilinearity"));
    assert!(text.contains("all 14 suites passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn elm_dumps_matrices_and_cocycles() {
    let out = run(&["elm", "--charts", "4", "--seed", "11"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("atlas: 4 charts"));
    assert!(text.contains("overlap ("));
    // Deterministic for a fixed seed.
    let again = stdout(&run(&["elm", "--charts", "4", "--seed", "11"]));
    assert_eq!(text, again);
}

fn sample_json(perturb: bool) -> String {
    // g=2, n=2, abar = (3, 2) so the tails are {1, 2} at both points.
    let lambda_q2 = if perturb {
        "[[2.0, 0.0], [2.0, 0.0]]"
    } else {
        "[[2.0, 0.0], [1.0, 0.0]]"
    };
    format!(
        r#"{{
  "genus": 2,
  "n": 2,
  "points": [
    {{"id": "q1", "abar": [[3.0, 0.0], [2.0, 0.0]], "lambda": [[1.0, 0.0], [2.0, 0.0]]}},
    {{"id": "q2", "abar": [[3.0, 0.0], [2.0, 0.0]], "lambda": {lambda_q2}}}
  ]
}}"#
    )
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

#[test]
fn spectral_pass_case() {
    let f = write_temp(&sample_json(false));
    let out = run(&["spectral", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("tangency: PASS"), "{text}");
    assert!(text.contains("arithmetic 7, delta 2, geometric 5"), "{text}");
    assert!(text.contains("ordinary n-fold crossing"));
}

#[test]
fn spectral_fail_case_names_the_point() {
    let f = write_temp(&sample_json(true));
    let out = run(&["spectral", f.path().to_str().unwrap()]);
    // Without --strict the verdict is reported but the exit code is 0.
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("tangency: FAIL"), "{text}");
    assert!(text.contains("point q2") && text.contains("MISMATCH"), "{text}");
    // With --strict the failure is fatal.
    let strict = run(&["spectral", f.path().to_str().unwrap(), "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn spectral_schema_violations_exit_2() {
    for bad in [
        r#"{"genus": 2, "n": 2}"#,                                // missing points
        r#"{"genus": 2, "n": 2, "points": [], "extra": 1}"#,      // unknown field
        r#"{"genus": 1, "n": 2, "points": []}"#,                  // genus too small
        r#"{"genus": 2, "n": 2, "points": []}"#,                  // wrong point count
        r#"{"genus": 2, "n": 2, "points": [
             {"id": "q1", "abar": [[3.0, 0.0]]},
             {"id": "q2", "abar": [[3.0, 0.0], [2.0, 0.0]]}]}"#,  // abar length
        "not json",
    ] {
        let f = write_temp(bad);
        let out = run(&["spectral", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "input: {bad}");
    }
    let out = run(&["spectral", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn spectral_reports_missed_base_points() {
    let json = r#"{
  "genus": 2,
  "n": 2,
  "points": [
    {"id": "q1", "abar": [[0.0, 0.0], [0.0, 0.0]]},
    {"id": "q2", "abar": [[3.0, 0.0], [2.0, 0.0]]}
  ]
}"#;
    let f = write_temp(json);
    let out = run(&["spectral", f.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("branch misses C0 over point"), "{text}");
    assert!(text.contains("tangency: skipped"), "{text}");
}

#[test]
fn ampleness_table_shows_the_n3_threshold() {
    let out = run(&["ampleness", "--genus-min", "2", "--genus-max", "2", "--n-min", "2", "--n-max", "3", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2,2,-2,2,4,3,no"), "{text}");
    assert!(text.contains("3,2,8,4,5,4,yes"), "{text}");
}
