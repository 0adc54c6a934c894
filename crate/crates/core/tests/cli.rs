mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sponge::io::write_field;
use sponge::morphology::Field;

const HYP2: &str = r#"{"family": "hyperbolic", "dim": 2}"#;
const IP2: &str = r#"{"family": "inner_product", "dim": 2}"#;
const EPI2_P2: &str = r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 2.0}, "dim": 2}"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn sponge(args: &[&Path]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sponge")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sponge")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn hyperbolic_meet_prints_twelve_digits() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", HYP2);
    let pts = write(dir.path(), "p.csv", "0,1\n1,1\n");
    let out = run(&["meet", "--spec", p(&spec), p(&pts)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "0.5 0.866025403784");
}

#[test]
fn missing_meet_is_unbounded_with_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", HYP2);
    let pts = write(dir.path(), "p.csv", "0,1\n2,1\n");
    let out = run(&["meet", "--spec", p(&spec), p(&pts)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out).trim(), "UNBOUNDED");
}

#[test]
fn singleton_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", IP2);
    let pts = write(dir.path(), "p.csv", "0.25,-1.5\n");
    for cmd in ["join", "meet"] {
        let out = run(&[cmd, "--spec", p(&spec), p(&pts)]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), "0.25 -1.5");
    }
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", IP2);
    let bad_csv = write(dir.path(), "bad.csv", "1,x\n");
    let bad_spec = write(dir.path(), "bad.json", r#"{"family": "nope"}"#);
    let outside = write(dir.path(), "below.csv", "0,-1\n");
    let hyp = write(dir.path(), "hyp.json", HYP2);
    for args in [
        vec!["join", "--spec", p(&spec), p(&bad_csv)],
        vec!["join", "--spec", p(&bad_spec), p(&bad_csv)],
        vec!["join", "--spec", p(&spec), "/nonexistent/points.csv"],
        vec!["meet", "--spec", p(&hyp), p(&outside)],
        vec!["join", "--tol", "-1", "--spec", p(&spec), p(&bad_csv)],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn validate_verdicts_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 2.0}, "dim": 3}"#, 0, "PASS"),
        (r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 1.0}, "dim": 3}"#, 3, "square-superadditivity"),
        (r#"{"kappa": 0.7, "period": 1.0}"#, 3, "antiH"),
        (r#"{"kappa": 0.5, "period": 1.0}"#, 0, "PASS"),
    ];
    for (i, (json, code, needle)) in cases.iter().enumerate() {
        let spec = write(dir.path(), &format!("s{i}.json"), json);
        let out = run(&["validate", "--samples", "500", "--spec", p(&spec)]);
        let text = stdout(&out);
        assert_eq!(out.status.code(), Some(*code), "{json}: {text}");
        assert!(text.contains(needle), "{json}: {text}");
    }
    let broken = write(dir.path(), "broken.json", "{");
    assert_eq!(run(&["validate", "--spec", p(&broken)]).status.code(), Some(1));
}

#[test]
fn validate_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "s.json", r#"{"family": "epigraph", "profile": {"kind": "power", "c": 1.0, "p": 1.0}, "dim": 3}"#);
    let a = run(&["validate", "--seed", "7", "--spec", p(&spec)]);
    let b = run(&["validate", "--seed", "7", "--spec", p(&spec)]);
    assert_eq!(a.stdout, b.stdout);
}

fn cone_rows(text: &str, kind: &str) -> Vec<Vec<f64>> {
    text.lines()
        .filter_map(|l| l.strip_prefix(&format!("{kind},")))
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect()
}

#[test]
fn cones_trace_the_expected_curves() {
    let dir = tempfile::tempdir().unwrap();
    let ip = write(dir.path(), "ip.json", IP2);
    let hyp = write(dir.path(), "hyp.json", HYP2);
    let x = write(dir.path(), "x.csv", "2,0\n");
    let out = run(&["cones", "--spec", p(&ip), p(&x)]);
    assert_eq!(out.status.code(), Some(0));
    let left = cone_rows(&stdout(&out), "left");
    assert!(left.len() >= 16);
    for q in &left {
        assert!((((q[0] - 1.0).powi(2) + q[1] * q[1]).sqrt() - 1.0).abs() < 1e-9);
    }

    let zero = write(dir.path(), "zero.csv", "0,0\n");
    let out = stdout(&run(&["cones", "--spec", p(&ip), p(&zero)]));
    assert!(out.lines().any(|l| l == "right,everywhere"), "{out}");

    let y = write(dir.path(), "y.csv", "0,1\n");
    let out = stdout(&run(&["cones", "--spec", p(&hyp), p(&y)]));
    let left = cone_rows(&out, "left");
    assert!(!left.is_empty());
    for q in &left {
        assert!(q[1] >= -1e-12 && ((q[0] * q[0] + q[1] * q[1]).sqrt() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn axioms_and_oracle_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let ip = write(dir.path(), "ip.json", IP2);
    let pts = write(dir.path(), "p.csv", "2,0\n0,2\n");
    let out = run(&["axioms", "--spec", p(&ip), "--y", "0.5,0.5", p(&pts)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS"));

    let out = run(&["oracle", "--spec", p(&ip), "--side", "meet", p(&pts)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("AGREE"));
}

fn fixture_field() -> Field {
    common::family_fields(5).into_iter().find(|(name, _, _)| *name == "epigraph_p2").unwrap().2
}

#[test]
fn morph_identity_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", EPI2_P2);
    let se = write(dir.path(), "se.json", r#"{"offsets": [[0, 0]]}"#);
    let input = dir.path().join("in.field");
    let output = dir.path().join("out.field");
    write_field(&input, &fixture_field()).unwrap();
    let out = sponge(&[Path::new("morph"), Path::new("--spec"), &spec, Path::new("--se"), &se, Path::new("--op"), Path::new("dilate"), &input, &output]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(&input).unwrap(), std::fs::read(&output).unwrap());
}

#[test]
fn morph_unbounded_window_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "spec.json", IP2);
    let se = write(dir.path(), "se.json", r#"{"offsets": [[-1, 0], [0, 0], [1, 0]]}"#);
    let input = dir.path().join("in.field");
    let output = dir.path().join("out.field");
    // opposite vectors side by side: no join
    write_field(&input, &Field::new(2, 1, 2, vec![1.0, 0.0, -1.0, 0.0]).unwrap()).unwrap();
    let args = |policy: &str| {
        run(&["morph", "--spec", p(&spec), "--se", p(&se), "--op", "dilate", "--on-unbounded", policy, p(&input), p(&output)])
    };
    assert_eq!(args("error").status.code(), Some(2));
    let out = args("passthrough");
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("passed through: 2"), "{}", stdout(&out));
}
