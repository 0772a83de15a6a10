use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.display().to_string()
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz-cli")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

const B3: &str = "braid:3:x=1,y=2";

#[test]
fn test_equiv_prints_the_witness() {
    let o = cli(&["test-equiv", &fixture("b3.pres"), "--lhs", "g", "--rhs", "g2", "--backend", B3]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, ["equivalent", "s2 s3 s1^-1 s3"]);
}

#[test]
fn emit_trace_appends_the_rewriting_sequence() {
    let o = cli(&["test-equiv", &fixture("b3.pres"), "--lhs", "g", "--rhs", "g2", "--backend", B3, "--emit-trace"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().nth(2).unwrap().starts_with("step 1:"));
}

#[test]
fn naive_mode_is_undecidable() {
    let o = cli(&["test-equiv", &fixture("b3.pres"), "--lhs", "g", "--rhs", "g2", "--backend", B3, "--naive"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).starts_with("undecidable"));
}

#[test]
fn coxeter_mismatch_is_not_equivalent() {
    let o = cli(&["test-equiv", &fixture("dual.pres"), "--lhs", "a", "--rhs", "c", "--backend", "perm:s3.perm"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o).trim(), "not equivalent: coxeter mismatch");
}

#[test]
fn json_mirrors_the_verdict() {
    let o = cli(&["--format", "json", "test-equiv", &fixture("b3.pres"), "--lhs", "g", "--rhs", "g2", "--backend", B3]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "equivalent");
    assert_eq!(v["witness"], "s2 s3 s1^-1 s3");
}

#[test]
fn reverse_to_empty() {
    let o = cli(&["reverse", &fixture("p1.pres"), "--neg", "x x y x", "--pos", "z x y z"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "end: ε"));
    assert_eq!(out.lines().last(), Some("verdict: empty"));
}

#[test]
fn reverse_to_a_nonempty_word() {
    let o = cli(&["reverse", &fixture("p1.pres"), "--neg", "x", "--pos", "y y"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn reverse_with_a_tiny_budget_is_unknown() {
    let o = cli(&["reverse", &fixture("p1.pres"), "--neg", "x x y x", "--pos", "z x y z", "--budget-steps", "3"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn complete_reports_divergence() {
    let o = cli(&["complete", &fixture("p0.pres"), "--budget-steps", "1000"]);
    assert_eq!(code(&o), 2);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("added: y x y = y z x"));
    assert!(out.lines().last().unwrap().starts_with("verdict: diverged"));
}

#[test]
fn complete_hurwitz_adds_one_relation() {
    let o = cli(&["complete-hurwitz", &fixture("p0.pres")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "added: x y = z x\nverdict: completed\n");
}

#[test]
fn complete_on_a_complete_presentation() {
    let o = cli(&["complete", &fixture("p1.pres")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "verdict: completed\n");
}

#[test]
fn orbit_of_the_s3_triple() {
    let o = cli(&["orbit", &fixture("dual.pres"), "--system", "a", "--backend", "perm:s3.perm"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().last(), Some("orbit: complete (8 systems)"));
    let o = cli(&["orbit", &fixture("dual.pres"), "--system", "a", "--backend", "perm:s3.perm", "--limit", "2"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn embed_test_on_commuting_generators() {
    let o = cli(&["embed-test", &fixture("commuting.pres")]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "ε\nx\ny\nclosure: closed (3 words)\nembeds: yes\n");
}

#[test]
fn hc_search_finds_a_witness() {
    let o = cli(&["hc-search", &fixture("b3.pres"), "--lhs", "g", "--rhs", "g2", "--backend", B3]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("hc-equivalent"));
}

#[test]
fn verify_witness_accepts_and_rejects() {
    let base = ["verify-witness", &fixture("b3.pres"), "--lhs", "g", "--rhs", "g2", "--backend", B3, "--braid"];
    let ok = cli(&[&base[..], &["s2 s3 s1^-1 s3"]].concat());
    assert_eq!((code(&ok), stdout(&ok).trim().to_string()), (0, "pass".to_string()));
    let bad = cli(&[&base[..], &["s1"]].concat());
    assert_eq!((code(&bad), stdout(&bad).trim().to_string()), (1, "fail".to_string()));
}

#[test]
fn error_codes_are_distinct_from_verdicts() {
    assert_eq!(code(&cli(&["frobnicate"])), 10);
    assert_eq!(code(&cli(&["complete"])), 10);
    assert_eq!(code(&cli(&["complete", "/definitely/not/here.pres"])), 11);
    assert_eq!(code(&cli(&["complete", &fixture("bad.pres")])), 12);
    let o = cli(&["orbit", &fixture("dual.pres"), "--system", "a", "--backend", "braid:0:q"]);
    assert_eq!(code(&o), 13);
    let o = cli(&["orbit", &fixture("dual.pres"), "--system", "a", "--backend", "perm:missing.perm"]);
    assert_eq!(code(&o), 11);
    assert_eq!(code(&cli(&["--help"])), 0);
    assert_eq!(code(&cli(&["--version"])), 0);
}

#[test]
fn parse_errors_carry_a_position() {
    let o = cli(&["complete", &fixture("bad.pres")]);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2, column"), "{err}");
}
