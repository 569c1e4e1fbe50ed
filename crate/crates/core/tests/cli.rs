//! End-to-end checks of the `cubes` binary: JSON piping, exit codes, and
//! byte-for-byte determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_cubes");

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.stdin(if stdin.is_some() {
        Stdio::piped()
    } else {
        Stdio::null()
    });
    let mut child = cmd.spawn().expect("spawn cubes");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    child.wait_with_output().expect("wait for cubes")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_eval_factor_roundtrip() {
    let word = run(&["gen-word", "--blocks", "1,1", "--seed", "5"], None);
    assert!(word.status.success());
    let config = run(&["eval", "--blocks", "1,1"], Some(&stdout(&word)));
    assert!(config.status.success());
    let factored = run(&["factor", "--blocks", "1,1"], Some(&stdout(&config)));
    assert!(factored.status.success());
    let again = run(&["eval", "--blocks", "1,1"], Some(&stdout(&factored)));
    assert_eq!(stdout(&again), stdout(&config));
}

#[test]
fn pinwheel_factor_exits_3() {
    let config = run(&["gen-config", "--pinwheel"], None);
    assert!(config.status.success());
    let factored = run(&["factor", "--blocks", "1,1"], Some(&stdout(&config)));
    assert_eq!(factored.status.code(), Some(3));
    let text = stdout(&factored);
    assert!(text.contains("\"decomposable\": false"));
    assert!(text.contains("\"witness\""));
}

#[test]
fn invalid_json_exits_2() {
    let out = run(&["factor", "--blocks", "1,1"], Some("{not json"));
    assert_eq!(out.status.code(), Some(2));
    // overlapping cubes are structurally valid JSON but an invalid input
    let overlapping = r#"{"dim":1,"cubes":[
        {"intervals":[{"lo":"0","hi":"1/2"}]},
        {"intervals":[{"lo":"1/4","hi":"3/4"}]}]}"#;
    let out = run(&["factor", "--blocks", "1"], Some(overlapping));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn contract_and_threshold() {
    let config = run(&["gen-config", "--pinwheel"], None);
    let contracted = run(&["contract", "--t", "1/2"], Some(&stdout(&config)));
    assert!(contracted.status.success());
    assert!(stdout(&contracted).contains("1/6"));

    let report = run(
        &["threshold", "--blocks", "1,1", "--grid", "64"],
        Some(&stdout(&config)),
    );
    assert!(report.status.success());
    assert!(stdout(&report).contains("\"threshold\": \"1/2\""));

    let bad = run(&["contract", "--t", "3/2"], Some(&stdout(&config)));
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn check_command_exit_codes() {
    let ok = run(
        &["check", "--suite", "algebra", "--trials", "25", "--seed", "3"],
        None,
    );
    assert!(ok.status.success());
    assert!(stdout(&ok).contains("algebra: pass"));

    let unknown = run(&["check", "--suite", "bogus"], None);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn render_is_deterministic_svg() {
    let config = run(&["gen-config", "--pinwheel"], None);
    let args = ["render", "--strips", "1,1"];
    let a = run(&args, Some(&stdout(&config)));
    let b = run(&args, Some(&stdout(&config)));
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("<svg"));
    assert!(stdout(&a).trim_end().ends_with("</svg>"));
}

#[test]
fn gen_word_is_deterministic() {
    let args = ["gen-word", "--blocks", "2,1", "--seed", "77"];
    assert_eq!(stdout(&run(&args, None)), stdout(&run(&args, None)));
}
