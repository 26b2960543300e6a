use std::io::Write;
use std::process::{Command, Output, Stdio};

use acfqe::coeff::{BaseDomain, Ring, VarTable};
use acfqe::formula::parse;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_acfqe"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn qe_localization() {
    let o = run(
        &[
            "qe",
            "--base",
            "z",
            "--params",
            "u",
            "exists t. u*t - 1 = 0",
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "piece: open: u closed: -\n");
}

#[test]
fn qe_linear_with_verification() {
    let o = run(
        &[
            "qe",
            "--base",
            "z",
            "--params",
            "a,b",
            "--verify",
            "exists x. a*x + b = 0",
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "piece: open: a closed: -\npiece: open: 1 closed: a; b\n"
    );
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("verdict: pass"), "{err}");
}

#[test]
fn qe_canonical_output() {
    let o = run(
        &[
            "qe",
            "--params",
            "a,b",
            "--output",
            "canonical",
            "exists x. a*x + b = 0",
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "a != 0 | a = 0 & b = 0\n");
}

#[test]
fn qe_syntax_error() {
    let o = run(&["qe", "exists . x=0"], None);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("syntax error"));
}

#[test]
fn undeclared_parameter_is_an_input_error() {
    let o = run(&["qe", "exists x. a*x = 1"], None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("unknown identifier `a`"));
}

#[test]
fn bad_base_flag() {
    assert_eq!(code(&run(&["qe", "--base", "fp:4", "x = 0"], None)), 2);
    assert_eq!(code(&run(&["qe", "--base", "r", "x = 0"], None)), 2);
}

#[test]
fn resource_limit() {
    let o = run(
        &[
            "qe",
            "--params",
            "a",
            "--max-degree",
            "3",
            "exists x. a*x^3 + x + 1 = 0 & (a*x - 1)^3 != 0",
        ],
        None,
    );
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8(o.stderr).unwrap().contains("max-degree"));
}

#[test]
fn formula_from_stdin() {
    let o = run(
        &["qe", "--params", "u", "--file", "-"],
        Some("exists t. u*t - 1 = 0\n"),
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "piece: open: u closed: -\n");
}

#[test]
fn image_files() {
    let loc = "base z\nparams u\ngens t\nrel u*t - 1\n";
    let o = run(&["image", "--verify", "-"], Some(loc));
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "piece: open: u closed: -\n");

    let zero = run(&["image", "-"], Some("params u\nrel 1\n"));
    assert_eq!((code(&zero), stdout(&zero)), (0, "empty\n".to_string()));

    let identity = run(&["image", "-"], Some("params u\n"));
    assert_eq!(
        (code(&identity), stdout(&identity)),
        (0, "piece: open: 1 closed: -\n".to_string())
    );
}

#[test]
fn image_base_line_wins_over_flag() {
    let o = run(
        &["image", "--base", "q", "-"],
        Some("base z\ngens t\nrel 2*t - 1\n"),
    );
    assert_eq!(stdout(&o), "piece: open: 2 closed: -\n");
    let o = run(
        &["image", "--base", "z", "-"],
        Some("base q\ngens t\nrel 2*t - 1\n"),
    );
    assert_eq!(stdout(&o), "piece: open: 1 closed: -\n");
}

#[test]
fn malformed_presentation() {
    let o = run(&["image", "-"], Some("params u\ngens t\nrel u*t -\n"));
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("at 3:"));
    assert_eq!(code(&run(&["image", "-"], Some("relation t\n"))), 2);
    assert_eq!(code(&run(&["image", "/nonexistent/presentation"], None)), 2);
}

#[test]
fn verify_pass_fail_inconclusive() {
    let pass = run(
        &[
            "verify",
            "--params",
            "a,b",
            "exists x. a*x + b = 0",
            "a != 0 | a = 0 & b = 0",
        ],
        None,
    );
    assert_eq!(code(&pass), 0);
    assert!(stdout(&pass).starts_with("verdict: pass\n"));

    let fail = run(
        &[
            "verify",
            "--params",
            "a,b",
            "exists x. a*x + b = 0",
            "a != 0",
        ],
        None,
    );
    assert_eq!(code(&fail), 1);
    let text = stdout(&fail);
    assert!(text.starts_with("verdict: fail\n"));
    assert!(text.contains("counterexample: F_2: a = 0, b = 0; lhs true, rhs false"));

    let unsure = run(
        &[
            "verify",
            "--witness-cap",
            "1",
            "forall x. exists y. y^2 = x",
            "0 = 0",
        ],
        None,
    );
    assert_eq!(code(&unsure), 4);
    assert!(stdout(&unsure).starts_with("verdict: inconclusive\n"));
}

#[test]
fn at_most_ten_counterexamples() {
    let o = run(&["verify", "--params", "a,b", "a = 0", "a != 0"], None);
    assert_eq!(code(&o), 1);
    let n = stdout(&o)
        .lines()
        .filter(|l| l.starts_with("counterexample:"))
        .count();
    assert_eq!(n, 10);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--params",
        "a,b",
        "--sample-cap",
        "50",
        "--seed",
        "9",
        "--ext",
        "3",
        "exists x. a*x^2 + b = 0",
        "b != 0",
    ];
    let first = run(&args, None);
    let second = run(&args, None);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(code(&first), 1);

    let q = [
        "qe",
        "--params",
        "a,b",
        "forall x. exists y. a*x*y + b*y^2 = x",
    ];
    assert_eq!(run(&q, None).stdout, run(&q, None).stdout);
}

#[test]
fn printed_pieces_reparse() {
    let o = run(
        &[
            "qe",
            "--params",
            "a,b,c",
            "exists x. a*x^2 + b*x + c = 0 & x != 1",
        ],
        None,
    );
    assert_eq!(code(&o), 0);
    let ring = Ring::new(
        BaseDomain::Integers,
        VarTable::params(["a", "b", "c"]).unwrap(),
    );
    let text = stdout(&o);
    assert!(text.lines().count() > 1);
    for line in text.lines() {
        let rest = line.strip_prefix("piece: open: ").unwrap();
        let (open, closed) = rest.split_once(" closed: ").unwrap();
        let mut formula = format!("({open}) != 0");
        if closed != "-" {
            for a in closed.split("; ") {
                formula.push_str(&format!(" & ({a}) = 0"));
            }
        }
        parse(&formula, &ring).unwrap_or_else(|e| panic!("{line}: {e}"));
    }
}

#[test]
fn fp_base_uses_its_own_characteristic() {
    let o = run(
        &["qe", "--base", "fp:2", "--verify", "exists x. 2*x - 1 = 0"],
        None,
    );
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "empty\n");
}
