use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conway-shadows"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn shadow_fibonacci_sequence() {
    let out = run(&["sequence", "shadow-fibonacci", "--n", "9"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1,4,13,40,120,354,1031,2972,8495\n");
}

#[test]
fn mordell_branch_sequence() {
    let out = run(&["sequence", "mordell-branch", "--d", "2", "--n", "3"]);
    assert_eq!(stdout(&out), "3,17,99\n");
    let r = report(&["sequence", "mordell-branch", "--d", "2", "--n", "3", "--format", "json"]);
    assert_eq!(r["outputs"]["values"], serde_json::json!(["3", "17", "99"]));
}

#[test]
fn empty_sequence() {
    let out = run(&["sequence", "shadow-fibonacci", "--n", "0"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
}

#[test]
fn topograph_root() {
    let r = report(&["topograph", "--form", "1,1,1", "--depth", "3", "--format", "json"]);
    let nodes = r["outputs"]["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 15);
    let root = &nodes[0]["triple"];
    assert_eq!([&root["left"], &root["right"], &root["top"]], ["1", "1", "3"]);
    assert_eq!(r["checks"]["failed"], 0);
}

#[test]
fn depth_zero_is_root_only() {
    let r = report(&["topograph", "--form", "1,0,1", "--depth", "0"]);
    assert_eq!(r["outputs"]["nodes"].as_array().unwrap().len(), 1);
    let csv = stdout(&run(&["markov", "--depth", "0", "--format", "csv"]));
    assert_eq!(csv, "word,left,right,top,left_farey,right_farey,top_farey\n,1,1,1,1/0,0/1,1/1\n");
}

#[test]
fn river_description() {
    let r = report(&["topograph", "--form", "17,-12,2", "--river"]);
    assert_eq!(r["outputs"]["period"].as_str().unwrap().len(), 4);
    for t in r["outputs"]["period_states"].as_array().unwrap() {
        let l: i64 = t[0].as_str().unwrap().parse().unwrap();
        let r: i64 = t[1].as_str().unwrap().parse().unwrap();
        assert!(l * r < 0);
    }
    assert_eq!(report(&["river", "--form", "17,-12,2"])["outputs"], r["outputs"]);
}

#[test]
fn deterministic_output() {
    for args in [
        &["shadow-markov", "--depth", "5"][..],
        &["mordell", "--d", "3", "--m", "-2", "--depth", "4", "--format", "svg"],
        &["lyapunov", "--cf", "1,1,1,...", "--n", "40"],
        &["special-shadow", "--a", "2", "--b", "-3", "--c", "5", "--format", "dot", "--labels", "both"],
    ] {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn verify_suites_pass() {
    let r = report(&["verify", "--suite", "markov", "--depth", "10"]);
    assert_eq!(r["checks"]["failed"], 0);
    assert!(r["checks"]["passed"].as_u64().unwrap() > 0);
    let r = report(&["verify", "--suite", "mordell", "--d", "2,3,5", "--range", "10"]);
    assert_eq!(r["checks"]["failed"], 0);
}

#[test]
fn pell_output() {
    let r = report(&["pell", "--d", "2"]);
    assert_eq!(r["outputs"]["p"], "3");
    assert_eq!(r["outputs"]["q"], "2");
}

#[test]
fn growth_reports() {
    let r = report(&["growth", "--form", "1,1,1", "--path", "LR", "--n", "40"]);
    let v = r["outputs"]["exponent"].as_f64().unwrap();
    assert!((v - 0.9624).abs() < 0.05);
    let r = report(&["relative-growth", "--d", "2", "--path", "1,1,1,...", "--n", "30"]);
    let v = r["outputs"]["estimate"].as_f64().unwrap();
    assert!((v - 0.4812).abs() < 0.05);
    let csv = stdout(&run(&["lyapunov", "--word", "LR", "--n", "5", "--format", "csv"]));
    assert!(csv.starts_with("step,value\n1,"));
    assert_eq!(csv.lines().count(), 6);
}

#[test]
fn usage_errors_exit_nonzero() {
    for args in [
        &["topograph", "--form", "1,1"][..],
        &["river", "--form", "1,0,1"],
        &["pell", "--d", "4"],
        &["sequence", "mordell-branch", "--n", "3"],
        &["verify", "--suite", "nope"],
        &["markov", "--depth", "30"],
        &["sequence", "shadow-fibonacci", "--n", "3", "--format", "svg"],
    ] {
        let out = run(args);
        assert!(!out.status.success(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}
