//! Black-box tests against the installed binary: exact output lines, CSV
//! shapes, and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordsum"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("no signal")
}

fn tmp(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("ordsum-{}-{name}", std::process::id()))
}

#[test]
fn ord_eval_prints_normal_forms() {
    for (input, expected) in [
        ("w^2*3+w+5", "w^2*3+w+5"),
        ("1+w+3+w*2", "w*3"),
        ("w^(w+1)*4+3", "w^(w+1)*4+3"),
        ("5+5", "10"),
        ("w*0", "0"),
        ("w^0", "1"),
        ("0+w^3*2+0", "w^3*2"),
    ] {
        let out = run(&["ord", "eval", input]);
        assert_eq!(code(&out), 0, "{input}: {}", stderr(&out));
        assert_eq!(stdout(&out), format!("{expected}\n"), "input {input}");
    }
}

#[test]
fn ord_arithmetic_is_order_sensitive() {
    let out = run(&["ord", "cmp", "w^2", "w*999"]);
    assert_eq!(stdout(&out), ">\n");
    let out = run(&["ord", "cmp", "3", "w"]);
    assert_eq!(stdout(&out), "<\n");
    let out = run(&["ord", "cmp", "w+1", "w+1"]);
    assert_eq!(stdout(&out), "=\n");
    let out = run(&["ord", "add", "w+1", "w"]);
    assert_eq!(stdout(&out), "w*2\n");
    let out = run(&["ord", "add", "1", "w"]);
    assert_eq!(stdout(&out), "w\n");
    let out = run(&["ord", "mul", "w+1", "w"]);
    assert_eq!(stdout(&out), "w^2\n");
    let out = run(&["ord", "mul", "w", "2"]);
    assert_eq!(stdout(&out), "w*2\n");
}

#[test]
fn parse_errors_carry_byte_positions_and_carets() {
    let cases = [
        ("w^", "byte 2"),
        ("w+", "byte 2"),
        ("", "byte 0"),
        ("w**2", "byte 2"),
        ("w^2)", "byte 3"),
        ("(w)", "byte 0"),
    ];
    for (input, needle) in cases {
        let out = run(&["ord", "eval", input]);
        assert_eq!(code(&out), 2, "input {input:?}");
        let err = stderr(&out);
        assert!(err.contains(needle), "input {input:?}: {err}");
        assert!(err.contains('^'), "caret missing for {input:?}: {err}");
    }
}

#[test]
fn sum_zero_family_is_exactly_zero() {
    let out = run(&["sum", "family:zero", "--ordinal", "w^2*3+w+5"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "0 ± 0\n");
}

#[test]
fn sum_reference_values() {
    let out = run(&["sum", "family:n_over_2n"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("2.000000000 ± "), "{}", stdout(&out));

    let out = run(&["sum", "family:geometric(0.5)", "--ordinal", "w*2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("1.000000000 ± "), "{}", stdout(&out));

    let out = run(&["sum", "family:vector_geometric(3,0.5)"]);
    assert_eq!(code(&out), 0);
    assert!(
        stdout(&out).starts_with("[0.571428571; 0.285714285"),
        "{}",
        stdout(&out)
    );

    let out = run(&["sum", "family:geometric(-0.5)", "--norms"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("1.000000000 ± "), "{}", stdout(&out));
}

#[test]
fn sum_unresolved_outcomes_use_exit_three() {
    let out = run(&["sum", "custom:harmonic"]);
    assert_eq!(code(&out), 3);
    let err = stderr(&out);
    assert!(err.contains("unresolved at w"), "{err}");
    assert!(err.contains("no-tail-bound"), "{err}");

    let out = run(&["sum", "family:p_series(2)"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("limit-budget-exhausted"), "{}", stderr(&out));

    let out = run(&["sum", "custom:basel"]);
    assert_eq!(code(&out), 3, "basel has no certificate");
}

#[test]
fn heuristic_mode_is_opt_in_and_labelled() {
    let out = run(&["sum", "custom:basel", "--uncertified"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let line = stdout(&out);
    assert!(line.starts_with("1.644"), "{line}");
    assert!(line.contains("(heuristic)"), "{line}");

    // a certified series stays certified even when the flag is set
    let out = run(&["sum", "family:geometric(0.5)", "--uncertified"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("heuristic"), "{}", stdout(&out));
}

#[test]
fn bad_inputs_use_exit_two() {
    for args in [
        vec!["sum", "family:geometric(1.5)"],
        vec!["sum", "family:geometric(-1)"],
        vec!["sum", "family:p_series(1)"],
        vec!["sum", "family:vector_geometric(0,0.5)"],
        vec!["sum", "family:unheard_of"],
        vec!["sum", "custom:unknown"],
        vec!["sum", "family:zero", "--tol", "0"],
        vec!["sum", "family:zero", "--ordinal", "w^"],
        vec!["sum", "family:zero", "--ordinal", "w^2", "--bijection", "perturb:1"],
        vec!["sum", "family:zero", "--ordinal", "5"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "args {args:?}: {}", stderr(&out));
    }
}

#[test]
fn partials_emit_csv_with_ordinal_indices() {
    let out = run(&["partials", "family:n_over_2n", "--count", "4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "index,value\n0,0\n1,0.5\n2,1\n3,1.375\n");

    let out = run(&[
        "partials",
        "family:zero",
        "--ordinal",
        "w^2",
        "--count",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "index,value\n0,0\nw,0\nw*2,0\n");

    let out = run(&["partials", "custom:harmonic", "--count", "3"]);
    assert_eq!(code(&out), 0, "finite prefixes need no certificate");
    assert_eq!(stdout(&out), "index,value\n0,0\n1,1\n2,1.5\n");
}

#[test]
fn partials_write_csv_files() {
    let path = tmp("partials.csv");
    let out = run(&[
        "partials",
        "family:n_over_2n",
        "--count",
        "3",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "");
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, "index,value\n0,0\n1,0.5\n2,1\n");
    std::fs::remove_file(&path).ok();
}

#[test]
fn partials_reject_bad_limits() {
    let out = run(&["partials", "family:zero", "--ordinal", "w+5"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("not a limit"), "{}", stderr(&out));

    let out = run(&[
        "partials",
        "family:zero",
        "--ordinal",
        "w^2",
        "--limit",
        "w^3",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("exceeds the domain"), "{}", stderr(&out));
}

#[test]
fn verify_single_reports_pass() {
    let out = run(&["verify", "family:geometric(0.5)", "--ordinal", "w^2"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict:     pass"), "{text}");
    assert!(text.contains("n0="), "{text}");
    assert!(text.contains("original:    1.000000000"), "{text}");
}

#[test]
fn verify_perturbed_passes() {
    let out = run(&[
        "verify",
        "family:n_over_2n",
        "--ordinal",
        "w*2",
        "--bijection",
        "perturb:3:64",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("verdict:     pass"));
}

#[test]
fn verify_without_certificate_is_inconclusive() {
    let out = run(&["verify", "custom:harmonic", "--ordinal", "w^2"]);
    assert_eq!(code(&out), 3);
    assert!(stdout(&out).contains("verdict:     inconclusive"), "{}", stdout(&out));
}

#[test]
fn verify_batch_writes_csv_and_summary() {
    let path = tmp("batch.csv");
    let out = run(&[
        "verify",
        "family:geometric(0.5)",
        "--ordinal",
        "w^2",
        "--batch",
        "3",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stderr(&out).contains("batch: 3 pass, 0 fail, 0 inconclusive"));
    let written = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = written.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "series,ordinal,bijection,verdict,discrepancy,err_total");
    for (i, row) in lines[1..].iter().enumerate() {
        assert!(
            row.starts_with(&format!("family:geometric(0.5),w^2,perturb:{i}:64,pass,")),
            "{row}"
        );
    }
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_batch_inconclusive_exits_three() {
    let path = tmp("batch-inconclusive.csv");
    let out = run(&[
        "verify",
        "custom:harmonic",
        "--ordinal",
        "w*2",
        "--batch",
        "2",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("0 pass, 0 fail, 2 inconclusive"), "{}", stderr(&out));
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains(",inconclusive,"), "{written}");
    std::fs::remove_file(&path).ok();
}
