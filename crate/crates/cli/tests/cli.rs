//! End-to-end checks of the command-line surface: exact outputs, byte-stable
//! reruns, and the exit-status contract (0 success, 1 verification failure,
//! 2 usage errors).

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planar-hopf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn enumerate_trees_degree_three() {
    let out = run(&["enumerate", "--family", "tree", "--degree", "3"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(
        lines,
        vec!["(((())))", "((()()))", "((())())", "(()(()))", "(()()())"]
    );
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted, "canonical order");
}

#[test]
fn enumerate_respects_caps() {
    let out = run(&["enumerate", "--family", "ntree", "--degree", "7"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn series_sorted_b_column() {
    let out = run(&["series", "--family", "sorted", "--max", "7"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.len(), 8);
    let b: Vec<String> = lines[1..]
        .iter()
        .map(|l| l.split('\t').nth(2).unwrap().to_string())
        .collect();
    assert_eq!(b, vec!["1", "1", "3", "13", "71", "461", "3447"]);
}

#[test]
fn product_and_dual_product_outputs() {
    let out = run(&["product", "--family", "tree", "(())", "(())"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), vec!["1*tree:((())) + 1*tree:(()())"]);

    let out = run(&["dual-product", "(())", "(())"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), vec!["1*tree:((())) + 1*tree:(()())"]);

    let out = run(&["product", "--family", "word", "2 1 1 2", "3 3 2 1 1 2"]);
    assert!(out.status.success());
    let text = &stdout_lines(&out)[0];
    assert_eq!(text.matches(" + ").count(), 9, "ten addends");
    assert!(text.contains("word:2 1 1 2 5 5 4 3 3 4"));
}

#[test]
fn coproduct_tensor_text() {
    let out = run(&["coproduct", "--family", "tree", "((()))"]);
    assert!(out.status.success());
    assert_eq!(
        stdout_lines(&out),
        vec!["1*tree:((())) (x) tree:() + 1*tree:(()) (x) tree:(()) + 1*tree:() (x) tree:((()))"]
    );
}

#[test]
fn idempotent_output() {
    let out = run(&["idempotent", "--family", "tree", "((()))"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), vec!["1*tree:((())) + -1*tree:(()())"]);

    // the trivial tree is outside ker ε
    let out = run(&["idempotent", "--family", "tree", "()"]);
    assert_eq!(out.status.code(), Some(2));

    // family membership is enforced
    let out = run(&["idempotent", "--family", "sorted", "((2)(1))"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_streams_pairs() {
    let out = run(&["convert", "--map", "euler", "--degree", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), vec!["((1))\t1 1"]);

    let out = run(&["convert", "--map", "planar-binary", "--degree", "2"]);
    assert_eq!(
        stdout_lines(&out),
        vec!["((()))\t((.,.),.)", "(()())\t(.,(.,.))"]
    );

    let out = run(&["convert", "--map", "sorted-perm", "--degree", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out).len(), 6);
}

#[test]
fn verify_reports_and_exit_codes() {
    let out = run(&["verify", "--suite", "hopf", "--maxdeg", "4"]);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines.last().map(String::as_str), Some("OK"));
    assert!(lines.iter().any(|l| l.contains("PASS")));
    assert!(!lines.iter().any(|l| l.contains("FAIL")));

    // deliberately broken fixture flips the exit status
    let out = run(&["verify", "--suite", "broken-fixture"]);
    assert_eq!(out.status.code(), Some(1));
    let lines = stdout_lines(&out);
    assert_eq!(lines.last().map(String::as_str), Some("FAIL"));

    let out = run(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["product", "--family", "tree", "(()", "()"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["product", "--family", "word", "1 2 1 2", "1 1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["product", "--family", "tree", "(())", "((1))"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "--suite", "hopf", "--maxdeg", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_byte_identical_across_runs() {
    for args in [
        vec!["enumerate", "--family", "ntree", "--degree", "3"],
        vec!["product", "--family", "ntree", "((1)(2))", "((1))"],
        vec!["verify", "--suite", "trees", "--maxdeg", "4"],
        vec!["series", "--family", "increasing", "--max", "8"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "args {args:?}");
    }
}
