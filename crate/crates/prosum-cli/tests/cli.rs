//! End-to-end CLI tests: exit codes, report contents, and byte-identical
//! output across repeated runs.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prosum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn mackey_golden_case_passes() {
    let out = run(&["mackey", "--in", fixture("s3_case.doc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("prosum-report v1\n"), "{}", text);
    assert!(text.contains("task = mackey"));
    assert!(text.contains("info lhs-dim = 3"));
    assert!(text.contains("info component-dims = [1, 2]"));
    assert!(text.contains("check dimension-bookkeeping = PASS"));
    assert!(text.contains("check iso-bijective = PASS"));
    assert!(text.contains("witness iso = "));
    assert!(text.ends_with("verdict = PASS\n"));
}

#[test]
fn golden_report_matches_byte_for_byte() {
    let out = run(&["mackey", "--in", fixture("s3_case.doc").to_str().unwrap()]);
    let expected = std::fs::read(fixture("s3_case.report.golden")).unwrap();
    assert_eq!(out.stdout, expected);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = run(&["mackey", "--in", fixture("s3_case.doc").to_str().unwrap()]);
    let b = run(&["mackey", "--in", fixture("s3_case.doc").to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["sweep", "--suite", "solver-oracle", "--seed", "7"]);
    let b = run(&["sweep", "--suite", "solver-oracle", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn pd_of_trivial_module_reports_above_cutoff() {
    let out = run(&["pd", "--in", fixture("pd_trivial.doc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("param cutoff = 4"));
    assert!(text.contains("info pd = ABOVE_CUTOFF"));
    // a smaller cutoff is honored
    let out = run(&[
        "pd",
        "--in",
        fixture("pd_trivial.doc").to_str().unwrap(),
        "--cutoff",
        "1",
    ]);
    assert!(stdout(&out).contains("param cutoff = 1"));
}

#[test]
fn non_invertible_matrix_exits_2_and_names_the_module() {
    let out = run(&["pd", "--in", fixture("bad_module.doc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("module 'bad'"), "{}", err);
    assert!(err.contains("not invertible"), "{}", err);
}

#[test]
fn projective_reports_witness_for_regular_module() {
    // reuse the bundle fixture's regular module by a fresh document
    let doc = fixture("tor_ext.doc");
    let out = run(&["tor", "--in", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("info dim = 1"));
    let out = run(&["ext", "--in", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("info dim = 1"));
}

#[test]
fn bundle_commands_work() {
    let doc = fixture("bundle.doc");
    let out = run(&["bundle-sum", "--in", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("info sum-dim = 3"));
    assert!(text.contains("check fiber-injections-injective = PASS"));

    let out = run(&["cosheaf-check", "--in", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("check cosheaf-axiom = PASS"));

    let out = run(&["bundle-tensor", "--in", fixture("tensor.doc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("info fiber-dims = [1, 2]"));
    assert!(text.contains("check sum-commutation-bijective = PASS"));
}

#[test]
fn tower_commands_work() {
    let doc = fixture("tower.doc");
    let out = run(&["tower-check", "--in", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("check induced-sum-maps-surjective = PASS"));
    assert!(text.contains("check squares-commute = PASS"));

    let out = run(&["factor", "--in", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("info level = 0"));
}

#[test]
fn exproj_reports_the_obstruction() {
    let out = run(&["exproj", "--p", "2", "--dim", "1", "--depth", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("check every-level-splits = PASS"));
    assert!(text.contains("check no-compatible-family = PASS"));
    assert!(text.contains("info witness-point = "));
    assert!(text.ends_with("verdict = PASS\n"));
}

#[test]
fn meldec_and_tree_resolution_pass() {
    let out = run(&["meldec", "--in", fixture("meldec.doc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("info orbits = 1"));
    assert!(text.contains("check sum-iso-bijective = PASS"));

    let out = run(&["tree-resolution", "--in", fixture("tree.doc").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("info sequence-dims = 1 -> 2 -> 1"));
    assert!(text.contains("check boundary-injective = PASS"));
    assert!(text.contains("check image-equals-augmentation-kernel = PASS"));
    assert!(text.contains("check pd-within-derived-bound = PASS"));
}

#[test]
fn sweep_commands_work() {
    let out = run(&["sweep", "--suite", "solver-oracle", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("param suite = solver-oracle"));
    assert!(text.contains("param seed = 7"));
    assert!(text.contains("check all-cases-pass = PASS"));

    let out = run(&["sweep", "--suite", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_verdicts_exit_1_and_embed_a_repro_document() {
    let doc = fixture("factor_fail.doc");
    let out = run(&["factor", "--in", doc.to_str().unwrap(), "--max-level", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("check factorization-found = FAIL"));
    assert!(text.contains("repro {"));
    assert!(text.contains("tower tw { levels = [l0, l1]  transitions = [t0] }"));
    assert!(text.ends_with("verdict = FAIL\n"));
    // unrestricted search succeeds at the top level
    let out = run(&["factor", "--in", doc.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("info level = 1"));
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["mackey"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["mackey", "--in", "/nonexistent/file.doc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = std::env::temp_dir().join("prosum-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.txt");
    let out = run(&[
        "mackey",
        "--in",
        fixture("s3_case.doc").to_str().unwrap(),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with("verdict = PASS\n"));
    std::fs::remove_file(&path).ok();
}
