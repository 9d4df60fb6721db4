//! End-to-end checks of the `macdo` binary: canonical strings, the JSON
//! envelope against the shipped fixtures, suite exit codes, report
//! determinism under a fixed seed, and numeric evaluation.

use std::path::PathBuf;
use std::process::{Command, Output};

use macdo_core::suites::SuiteReport;

fn macdo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macdo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = macdo(args);
    assert!(
        out.status.success(),
        "macdo {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../macdo-core/tests/fixtures")
}

#[test]
fn computes_canonical_strings() {
    assert_eq!(
        stdout_of(&["compute", "P", "--n", "3", "--lambda", "0,0,2"]).trim(),
        "m[0,0,2] + ((1 + q - t - q*t)/(1 - q*t))*m[0,1,1]"
    );
    assert_eq!(
        stdout_of(&["compute", "phi", "--n", "3", "--lambda", "0,0,0"]).trim(),
        "1"
    );
    let eigen = stdout_of(&["compute", "eigen", "--n", "3", "--lambda", "0,0,2"]);
    assert_eq!(
        eigen.trim(),
        "h1 = t^-1 + 1 + q^2*t\nh2 = t^-1 + q^2 + q^2*t\nh3 = q^2"
    );
    let chi = stdout_of(&["compute", "chi", "--lambda", "0,0,1"]);
    assert!(chi.starts_with("chi_0 = 1\nchi_1 ="), "got: {chi}");
}

#[test]
fn json_output_matches_shipped_fixtures() {
    let dir = fixture_dir();
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).expect("fixture dir present") {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_string_lossy().to_string();
        let (kind, lambda) = match name.split_once('_') {
            Some(("p", rest)) => ("P", rest.replace('_', ",")),
            Some(("phi", rest)) => ("phi", rest.replace('_', ",")),
            _ => continue,
        };
        let got = stdout_of(&["compute", kind, "--lambda", &lambda, "--json"]);
        let want = std::fs::read_to_string(&path).unwrap();
        assert_eq!(got, want, "fixture drift for {name}");
        seen += 1;
    }
    assert_eq!(seen, 16, "all shipped fixtures exercised");
}

#[test]
fn verify_reports_round_trip_and_exit_codes() {
    let raw = stdout_of(&[
        "verify",
        "integer-g",
        "--g",
        "1",
        "--lambda",
        "0,0,1",
        "--json",
    ]);
    let report: SuiteReport = serde_json::from_str(&raw).expect("well-formed report");
    assert!(report.all_pass());
    let again = serde_json::to_string_pretty(&report).expect("serialisable");
    assert_eq!(raw.trim_end(), again, "re-serialisation drifted");

    let failing = macdo(&["verify", "aw", "--draws", "2", "--tol", "1e-18"]);
    assert_eq!(failing.status.code(), Some(1));

    let unknown = macdo(&["verify", "nosuch"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_under_a_seed() {
    let args = ["verify", "aw", "--draws", "4", "--seed", "13", "--json"];
    let mut runs: Vec<SuiteReport> = (0..2)
        .map(|_| serde_json::from_str(&stdout_of(&args)).expect("report"))
        .collect();
    for rep in &mut runs {
        for case in &mut rep.cases {
            case.millis = 0;
        }
    }
    let as_text: Vec<String> = runs
        .iter()
        .map(|r| serde_json::to_string(r).unwrap())
        .collect();
    assert_eq!(as_text[0], as_text[1], "same seed gave different draws");

    let other: SuiteReport =
        serde_json::from_str(&stdout_of(&["verify", "aw", "--draws", "4", "--seed", "14", "--json"]))
            .expect("report");
    let other_errs: Vec<f64> = other
        .cases
        .iter()
        .filter_map(|c| c.numeric.as_ref().map(|m| m.error))
        .collect();
    let first_errs: Vec<f64> = runs[0]
        .cases
        .iter()
        .filter_map(|c| c.numeric.as_ref().map(|m| m.error))
        .collect();
    assert_ne!(other_errs, first_errs, "seed is ignored");
}

#[test]
fn evaluates_objects_numerically() {
    // P for the weight (0,1) is m_(0,1) = x1 + x2.
    let p = stdout_of(&[
        "eval", "P", "--lambda", "0,1", "--q", "0.3", "--t", "0.5", "0.5", "0.25",
    ]);
    assert_eq!(p.trim(), "P = 0.75");
    // The constant separated polynomial evaluates to one everywhere.
    let phi = stdout_of(&[
        "eval", "phi", "--lambda", "0,0,0", "--q", "0.3", "--t", "0.5", "0.9",
    ]);
    assert_eq!(phi.trim(), "phi = 1");
    let chi = stdout_of(&["eval", "chi", "--lambda", "0,0,1", "--q", "0.3", "--t", "0.5"]);
    assert!(chi.starts_with("chi_0 = 1\nchi_1 ="), "got: {chi}");
    let wrong_arity = macdo(&["eval", "P", "--lambda", "0,1", "--q", "0.3", "--t", "0.5", "0.5"]);
    assert_eq!(wrong_arity.status.code(), Some(2));
}

#[test]
fn thread_cap_is_honoured_and_validated() {
    let ok = Command::new(env!("CARGO_BIN_EXE_macdo"))
        .env("MACDO_THREADS", "2")
        .args(["verify", "sepeq", "--n", "2", "--max-part", "1"])
        .output()
        .expect("binary runs");
    assert!(ok.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_macdo"))
        .env("MACDO_THREADS", "zero")
        .args(["verify", "sepeq", "--n", "2", "--max-part", "1"])
        .output()
        .expect("binary runs");
    assert_eq!(bad.status.code(), Some(2));
}
