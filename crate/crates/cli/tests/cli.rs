use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fopkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eval_exit_codes() {
    let o = run(&["eval", &data("k3.txt"), &data("complete.fo")]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));
    let o = run(&["eval", &data("c5.txt"), &data("loop.fo")]);
    assert_eq!((code(&o), stdout(&o).trim()), (1, "false"));
    let o = run(&["eval", &data("c5.txt"), &data("bad.fo")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:1"));
}

#[test]
fn eval_second_order_sentence() {
    let o = run(&["eval", &data("k3.txt"), &data("toy.txt")]);
    assert!(matches!(code(&o), 0 | 1));
    assert!(matches!(stdout(&o).trim(), "true" | "false"));
}

#[test]
fn decide_verdicts_and_budget() {
    let o = run(&["decide", "2cc", &data("c5.txt")]);
    assert_eq!((code(&o), stdout(&o).lines().next()), (1, Some("false")));
    let o = run(&["decide", "qsat2", &data("phi1.txt")]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("true existential variables"));
    let o = run(&["decide", "2cc", &data("k25.txt")]);
    assert_eq!(code(&o), 3);
    let o = run(&["--color-cap", "25", "decide", "2cc", &data("k25.txt")]);
    assert_eq!(code(&o), 0);
    let o = run(&["decide", "2cc-n:6", &data("c5.txt")]);
    assert_eq!(code(&o), 0);
    let o = run(&["decide", "nonsense", &data("c5.txt")]);
    assert_eq!(code(&o), 2);
}

#[test]
fn reduce_outputs() {
    let o = run(&["reduce", "qsat2-2cc", &data("phi1.txt"), "--emit", "graph"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("graph phi1_image { n = 24 ;"));
    let o = run(&["reduce", "pad-2cc:7", &data("k3.txt"), "--emit", "graph"]);
    assert!(stdout(&o).contains("n = 12 ;"));
    let o = run(&["reduce", "qsat2-qunsat2", "--emit", "fop"]);
    let text = stdout(&o);
    let body: Vec<&str> = text.lines().filter(|l| l.contains(" = ") && !l.contains("arity") && !l.contains("universe")).collect();
    assert_eq!(body, vec!["  E = E(x1) ;", "  P = M(x1, y1) ;", "  N = Q(x1, y1)"]);
    let o = run(&["reduce", "qsat2-qunsat2", &data("c5.txt")]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("vocabulary"));
    let o = run(&["reduce", "no-such", "--emit", "fop"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_report() {
    let o = run(&["verify", "qsat2-qunsat2", "--sizes", "2"]);
    assert_eq!(code(&o), 0);
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert!(last.ends_with("counterexamples=0"), "{last}");
    let o = run(&["--format", "tsv", "verify", "qsat2-qunsat2", "--sizes", "1"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "size\tinstance\tsource\ttarget\tagree");
    assert_eq!(lines.len(), 1 + 8 + 1);
    assert!(lines[1..9].iter().all(|l| l.ends_with("\ttrue")));
    // Byte-deterministic across runs and strategies.
    let again = run(&["--format", "tsv", "--sequential", "verify", "qsat2-qunsat2", "--sizes", "1"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn compile_toy_sentence() {
    let out = std::env::temp_dir().join(format!("fopkit-toy-{}.fop", std::process::id()));
    let o = run(&["compile", &data("toy.txt"), "--sizes", "2", "-o", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("counterexamples=0"));
    let fop = std::fs::read_to_string(&out).unwrap();
    assert!(fop.starts_with("fop toy : sigma_g -> sigma_dnf {"));
    let _ = std::fs::remove_file(out);
}

#[test]
fn validate_shipped() {
    let o = run(&["validate"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().count(), 12);
    let o = run(&["--fidelity", "verbatim", "validate", "qunsat2-unique"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn universality_checks() {
    let o = run(&["universality", "check", "--problem", "2cc", "--n", "3", "--k", "1", "--mmax", "5"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(": pass"));
    let o = run(&["universality", "check", "--problem", "2cc-c", "--n", "2", "--k", "1", "--mmax", "4"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("counterexample m=2 [E(0,1)]"));
}

#[test]
fn witness_graphs() {
    let o = run(&["witness", "--problem", "2cc", "--m", "5", "E(0,1)", "!E(1,2)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("graph witness { n = 5 ;"));
    let o = run(&["witness", "--problem", "2cc-c", "--m", "7", "E(0,1)"]);
    assert!(stdout(&o).contains("(2,3) (2,6) (3,4) (4,5) (5,6)"));
    let o = run(&["witness", "--problem", "2cc", "--m", "3", "E(0,1)", "!E(1,0)"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify", "qsat2-qunsat2"])), 2);
}
