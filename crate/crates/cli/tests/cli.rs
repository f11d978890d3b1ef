//! End-to-end tests of the compiled binary: output schemas and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_betapart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_reports_case_and_target() {
    let out = run(&["classify", "--poly", "1,3,1"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "InfiniteCapable");
    assert_eq!(v["reason"], "Case_B≥0_C>0");
    assert_eq!(v["witness_target"], "(0+0*sqrt(5))/1");
}

#[test]
fn classify_routes_complex_discriminants() {
    let out = run(&["classify", "--poly", "1,1,3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "InfiniteCapable");
    assert_eq!(v["reason"], "ComplexRoots");
    assert!(v["witness_target"].is_null());
}

#[test]
fn classify_always_finite() {
    let out = run(&["classify", "--poly", "1,-6,6"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "AlwaysFinite");
}

#[test]
fn count_accepts_digit_vectors_and_elements() {
    let by_digits = run(&["count", "--poly", "1,-6,6", "--digits", "0,6"]);
    assert!(by_digits.status.success());
    assert_eq!(stdout_str(&by_digits).trim(), "2");

    let by_element = run(&["count", "--poly", "1,-6,6", "--alpha", "(18+6*sqrt(3))/1"]);
    assert!(by_element.status.success());
    assert_eq!(stdout_str(&by_element).trim(), "2");

    let integer_shorthand = run(&["count", "--poly", "1,-6,6", "--alpha", "6"]);
    assert!(integer_shorthand.status.success());
    assert_eq!(stdout_str(&integer_shorthand).trim(), "1");
}

#[test]
fn enumerate_lists_digit_vectors_sorted() {
    let out = run(&["enumerate", "--poly", "1,-6,6", "--digits", "0,6"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v, serde_json::json!([["0", "6"], ["6", "0", "1"]]));
}

#[test]
fn witness_emits_verified_family() {
    let out = run(&["witness", "--poly", "5,-5,1", "--k", "3"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["case"], "Case_B<0_C>0_Lemma");
    assert_eq!(v["target"], "(20+4*sqrt(5))/5");
    let parts = v["partitions"].as_array().unwrap();
    assert_eq!(parts.len(), 3);
    assert_eq!(parts[0], serde_json::json!(["2", "0", "1", "5", "5"]));
}

#[test]
fn witness_complex_case_scales_a_zero_partition() {
    let out = run(&["witness", "--poly", "1,0,1", "--k", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["target"], "0");
    assert_eq!(
        v["partitions"],
        serde_json::json!([["1", "0", "2", "0", "1"], ["2", "0", "4", "0", "2"]])
    );
}

#[test]
fn pell_csv_has_fixed_header_and_fundamental_row() {
    let out = run(&["pell", "--d", "2", "--count", "4"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,a,b,Tr,Nm"));
    assert_eq!(lines.next(), Some("3,2,4,2,8,8"));
    assert_eq!(lines.next(), Some("17,12,18,12,36,36"));
}

#[test]
fn verify_exit_code_tracks_all_ok() {
    let ok = run(&["verify", "trace-power-counts", "--poly", "1,-6,6", "--nmax", "3"]);
    assert!(ok.status.success());
    let v = stdout_json(&ok);
    assert_eq!(v["all_ok"], true);
    assert_eq!(v["claim"], "trace-power-counts");
    assert!(v["instances"].as_array().unwrap().len() >= 8);

    let domain = run(&["verify", "trace-power-counts", "--poly", "1,-5,3"]);
    assert_eq!(domain.status.code(), Some(2));
}

#[test]
fn verify_leading_term_merges_reports() {
    let out = run(&["verify", "leading-term", "--poly", "1,-6,6", "--nmax", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["all_ok"], true);
}

#[test]
fn mary_table_matches_known_values() {
    let out = run(&["mary", "--m", "2", "--n", "10"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,b_m(n)");
    assert_eq!(lines[1], "0,1");
    assert_eq!(lines[11], "10,14");

    let cong = run(&["mary", "--m", "2", "--n", "12", "--congruence"]);
    assert!(cong.status.success());
    let text = stdout_str(&cong);
    for line in text.lines().skip(1) {
        assert!(line.ends_with(",true"), "congruence row failed: {line}");
    }
}

#[test]
fn table_emits_residue_rows() {
    let out = run(&[
        "table",
        "--poly",
        "1,-6,6",
        "--targets",
        "6;(18+6*sqrt(3))/1",
        "--moduli",
        "2,3",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "target,count,modulus,residue");
    assert_eq!(lines[1], "(6+0*sqrt(3))/1,1,2,1");
    assert_eq!(lines[3], "(18+6*sqrt(3))/1,2,2,0");
}

#[test]
fn resource_cap_exits_with_three() {
    let out = run(&[
        "count",
        "--poly",
        "1,-6,6",
        "--digits",
        "0,6",
        "--max-nodes",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("resource cap"));
}

#[test]
fn usage_errors_exit_with_two() {
    let unknown_flag = run(&["count", "--poly", "1,-6,6", "--bogus"]);
    assert_eq!(unknown_flag.status.code(), Some(2));

    let missing_target = run(&["count", "--poly", "1,-6,6"]);
    assert_eq!(missing_target.status.code(), Some(2));

    let both_targets = run(&[
        "count", "--poly", "1,-6,6", "--digits", "0,6", "--alpha", "6",
    ]);
    assert_eq!(both_targets.status.code(), Some(2));

    let bad_poly = run(&["classify", "--poly", "1,-6"]);
    assert_eq!(bad_poly.status.code(), Some(2));

    let reducible = run(&["classify", "--poly", "1,-4,4"]);
    assert_eq!(reducible.status.code(), Some(2));

    let bad_element = run(&["count", "--poly", "1,-6,6", "--alpha", "sqrt(3)"]);
    assert_eq!(bad_element.status.code(), Some(2));
}

#[test]
fn infinite_regime_is_a_domain_error_for_count() {
    let out = run(&["count", "--poly", "1,3,1", "--digits", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("regime"));
}

#[test]
fn negative_digits_are_rejected() {
    let out = run(&["count", "--poly", "1,-6,6", "--digits", "1,-2"]);
    assert_eq!(out.status.code(), Some(2));
}
