use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use a1tk::report::canonicalize;
use serde_json::Value;
use tempfile::TempDir;

fn a1tk(args: &[&str]) -> Output {
    a1tk_env(args, None)
}

fn a1tk_env(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_a1tk"));
    cmd.args(args).env_remove("A1TK_SEED");
    if let Some(s) = seed {
        cmd.env("A1TK_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn weight_file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const THIRDS_132: &str =
    r#"{"type":"step","breakpoints":[0,0.3333333333333333,0.6666666666666666,1],"values":[1,3,2]}"#;
const HALVES: &str = r#"{"type":"step","breakpoints":[0,0.5,1],"values":[2,1]}"#;
const CONSTANT: &str = r#"{"type":"step","breakpoints":[0,1],"values":[3]}"#;

#[test]
fn rearrange_thirds() {
    let dir = TempDir::new().unwrap();
    let input = weight_file(&dir, "w.json", THIRDS_132);
    let out = a1tk(&["rearrange", "--input", s(&input)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let w = a1tk::parse_weight(&stdout(&out)).unwrap();
    let step = w.as_step().unwrap();
    assert_eq!(step.values(), &[3.0, 2.0, 1.0]);
    for (t, e) in step.breakpoints().iter().zip([0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0]) {
        assert!((t - e).abs() < 1e-15);
    }
    assert!(stderr(&out).contains("equimeasurable: true"));
}

#[test]
fn rearrange_power_is_identity() {
    let dir = TempDir::new().unwrap();
    let text = "{\"type\":\"power\",\"a\":0.5,\"alpha\":-0.5}\n";
    let input = weight_file(&dir, "g.json", text);
    let output = dir.path().join("out.json");
    let out = a1tk(&["rearrange", "--input", s(&input), "--output", s(&output)]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(output).unwrap(), text);
}

#[test]
fn invalid_cell_exits_2_naming_it() {
    let dir = TempDir::new().unwrap();
    let input = weight_file(&dir, "bad.json", r#"{"type":"step","breakpoints":[0,0.5,1],"values":[1,0]}"#);
    let out = a1tk(&["rearrange", "--input", s(&input)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("values[1]"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let garbage = weight_file(&dir, "g.json", "{not json");
    let missing = dir.path().join("missing.json");
    let cases: Vec<Vec<&str>> = vec![
        vec!["a1", "--input", s(&garbage)],
        vec!["a1", "--input", s(&missing)],
        vec!["a1"],
        vec!["a1", "--c", "0.5"],
        vec!["a1", "--c", "2", "--format", "csv"],
        vec!["a1", "--c", "2", "--oracle", "grid=64"],
        vec!["a1", "--gen", "bounded_ratio,4"],
        vec!["a1", "--gen", "bounded_ratio,4,0.5"],
        vec!["verify", "--c", "2", "--p", "2.5"],
        vec!["verify", "--c", "2", "--tol", "NaN"],
        vec!["verify", "--count", "3", "--c", "2"],
        vec!["sweep", "--c", "2", "--margin", "-1"],
        vec!["lemma1", "--input", s(&garbage)],
        vec!["gen"],
        vec!["frobnicate"],
        vec!["a1", "--bogus"],
        vec![],
    ];
    for args in cases {
        let out = a1tk(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
    }
    let out = a1tk_env(&["gen", "--gen", "bounded_ratio,4,2"], Some("not-a-number"));
    assert_eq!(code(&out), 2);
}

#[test]
fn help_exits_0() {
    let out = a1tk(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verify"));
}

#[test]
fn a1_examples() {
    let dir = TempDir::new().unwrap();
    let constant = weight_file(&dir, "c.json", CONSTANT);
    let out = a1tk(&["a1", "--input", s(&constant), "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["constant"].as_f64(), Some(1.0));

    let halves = weight_file(&dir, "h.json", HALVES);
    let out = a1tk(&["a1", "--input", s(&halves), "--format", "json", "--oracle", "grid=65536"]);
    assert_eq!(code(&out), 0);
    let report = json(&out);
    assert_eq!(report["constant"].as_f64(), Some(2.0));
    assert_eq!(report["sliver_right"], Value::Bool(true));
    let oracle = report["oracle"]["value"].as_f64().unwrap();
    assert!(oracle < 2.0 && 2.0 - oracle < 1e-3);
    assert!(report["oracle"]["gap"].as_f64().unwrap() > 0.0);

    let text = a1tk(&["a1", "--input", s(&halves), "--oracle", "grid=65536"]);
    assert!(stdout(&text).contains("oracle_gap"));
}

#[test]
fn a1_of_extremal_weight() {
    let out = a1tk(&["a1", "--c", "4", "--format", "json"]);
    assert_eq!(code(&out), 0);
    assert!((json(&out)["constant"].as_f64().unwrap() - 4.0).abs() < 1e-14);
}

#[test]
fn verify_seeded_corpus() {
    let out = a1tk(&["verify", "--count", "100", "--seed", "7"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&out);
    let records = report["records"].as_array().unwrap();
    assert_eq!(records.len(), 500);
    for check in ["theorem1", "theorem2", "lemma1", "sharpness_gap", "hy_monotone"] {
        assert_eq!(records.iter().filter(|r| r["check"] == check).count(), 100);
    }
    assert_eq!(report["holds"], Value::Bool(true));
}

#[test]
fn skew_fails_a_named_check() {
    let out = a1tk(&["verify", "--c", "2", "--skew", "1.01"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("FAIL sharpness_gap"), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["failed"][0], Value::String("sharpness_gap[0]".into()));
}

#[test]
fn verify_extremal_sharpness() {
    let out = a1tk(&["verify", "--c", "2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report = json(&out);
    let gap = report["records"].as_array().unwrap().iter().find(|r| r["check"] == "sharpness_gap").unwrap();
    assert!(gap["value"].as_f64().unwrap() < 1e-12);
}

#[test]
fn verify_single_generated_weight_as_text() {
    let out = a1tk(&["verify", "--gen", "shuffle,16,3", "--seed", "5", "--format", "text"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("5 checks, 0 failed"));
}

#[test]
fn reports_round_trip_byte_identically() {
    let dir = TempDir::new().unwrap();
    let halves = weight_file(&dir, "h.json", HALVES);
    for args in [
        vec!["verify", "--count", "5"],
        vec!["a1", "--input", s(&halves), "--format", "json", "--oracle", "grid=256"],
        vec!["sweep", "--c", "3", "--format", "json", "--points", "7"],
        vec!["lemma1", "--input", s(&halves), "--format", "json", "--p", "3", "--delta", "0.25"],
    ] {
        let out = a1tk(&args);
        let text = stdout(&out);
        assert_eq!(canonicalize(&text).unwrap(), text, "{args:?}");
    }
}

#[test]
fn sweep_extremal_is_sharp() {
    let out = a1tk(&["sweep", "--c", "2", "--points", "50"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,lhs,rhs,ratio,holds"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 50);
    for row in rows {
        let ratio: f64 = row.split(',').nth(3).unwrap().parse().unwrap();
        assert!((ratio - 1.0).abs() < 1e-9, "{row}");
    }
}

fn ratios(out: &Output) -> Vec<f64> {
    stdout(out).lines().skip(1).map(|row| row.split(',').nth(3).unwrap().parse().unwrap()).collect()
}

#[test]
fn sweep_constant_and_halves() {
    let dir = TempDir::new().unwrap();
    let constant = weight_file(&dir, "c.json", CONSTANT);
    let out = a1tk(&["sweep", "--input", s(&constant), "--points", "10"]);
    assert_eq!(code(&out), 0);
    assert!(ratios(&out).iter().all(|&r| r == 1.0));

    let halves = weight_file(&dir, "h.json", HALVES);
    let out = a1tk(&["sweep", "--input", s(&halves), "--points", "20"]);
    assert_eq!(code(&out), 0);
    let r = ratios(&out);
    assert!(r.iter().all(|&x| x < 1.0));
    // The worst exponent is the low end; ratios climb toward it.
    assert!(r.windows(2).all(|w| w[0] > w[1]));
}

#[test]
fn lemma1_command() {
    let dir = TempDir::new().unwrap();
    let one = weight_file(&dir, "one.json", r#"{"type":"step","breakpoints":[0,1],"values":[1]}"#);
    let out = a1tk(&["lemma1", "--input", s(&one), "--p", "2", "--delta", "0.5", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert!((r["lhs"].as_f64().unwrap() - 0.5).abs() < 1e-15);
    assert!((r["rhs"].as_f64().unwrap() - 0.5).abs() < 1e-15);

    let increasing = weight_file(&dir, "inc.json", r#"{"type":"step","breakpoints":[0,0.5,1],"values":[1,2]}"#);
    let out = a1tk(&["lemma1", "--input", s(&increasing)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("cell 1"), "{}", stderr(&out));
}

#[test]
fn gen_is_deterministic_and_seed_env_wins() {
    let args = ["gen", "--gen", "bounded_ratio,8,4", "--seed", "42"];
    let first = a1tk(&args);
    assert_eq!(code(&first), 0);
    assert_eq!(first.stdout, a1tk(&args).stdout);
    let w = a1tk::parse_weight(&stdout(&first)).unwrap();
    assert_eq!(w.as_step().unwrap().cell_count(), 8);

    let other = a1tk(&["gen", "--gen", "bounded_ratio,8,4", "--seed", "43"]);
    assert_ne!(first.stdout, other.stdout);
    let overridden = a1tk_env(&["gen", "--gen", "bounded_ratio,8,4", "--seed", "43"], Some("42"));
    assert_eq!(first.stdout, overridden.stdout);
}

#[test]
fn generated_weight_feeds_back_in() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("w.json");
    let out = a1tk(&["gen", "--gen", "nonincreasing_hardy,12,2", "--seed", "3", "--output", s(&path)]);
    assert_eq!(code(&out), 0);
    let via_file = a1tk(&["a1", "--input", s(&path), "--format", "json"]);
    let via_gen = a1tk(&["a1", "--gen", "nonincreasing_hardy,12,2", "--seed", "3", "--format", "json"]);
    assert_eq!(code(&via_file), 0);
    assert_eq!(via_file.stdout, via_gen.stdout);
}
