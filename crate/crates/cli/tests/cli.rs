use std::process::{Command, Output};

use serde_json::Value;

fn ncyc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncyc"))
        .args(args)
        .output()
        .expect("ncyc runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn field_reports_default_modulus() {
    let out = ncyc(&["field", "--p", "2", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["order"], 16);
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 0, 0, 1]));
}

#[test]
fn field_rejects_reducible_modulus() {
    let out = ncyc(&["field", "--p", "2", "--n", "2", "--modulus", "1,0,1"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("irreducible"));
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_ncyc"))
        .args(["field", "--p", "2", "--n", "12"])
        .env("NCYC_CAP", "1024")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn verify_involution_and_collision() {
    let out = ncyc(&[
        "verify", "--p", "7", "--n", "1", "--poly", "x^5", "--cycle", "2", "--cycle", "3",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["order"], 2);
    assert_eq!(v["is_ncycle_at"]["2"], true);
    assert_eq!(v["is_ncycle_at"]["3"], false);

    let out = ncyc(&["verify", "--p", "7", "--n", "1", "--poly", "x^2", "--cycle", "2"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["bijective"], false);
    assert_eq!(v["order"], "not a permutation");
    assert_eq!(v["collision"], serde_json::json!([3, 4]));
}

#[test]
fn order_json_and_csv() {
    let out = ncyc(&["order", "--p", "2", "--n", "6", "--poly", "x^2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["order"], 6);

    let out = ncyc(&["--csv", "order", "--p", "7", "--n", "1", "--poly", "x^5"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "order,fixed_points,cycle_length,count\n2,3,1,3\n2,3,2,2\n");
}

#[test]
fn construct_needs_field_for_open_families() {
    let out = ncyc(&["construct", "theta_cor", "--q", "7", "--cycle", "3", "--theta", "2"]);
    assert_eq!(code(&out), 2);
    let out = ncyc(&[
        "construct",
        "theta_cor",
        "--p",
        "7",
        "--n",
        "2",
        "--q",
        "7",
        "--cycle",
        "3",
        "--theta",
        "2",
        "--verify",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["instance"]["claimed_n"], 3);
    assert_eq!(v["check"]["agreement"], "AGREE");
}

#[test]
fn construct_rejects_bad_parameters() {
    let out = ncyc(&["construct", "jieguo", "--q", "64", "--t", "25", "--m", "6"]);
    assert_eq!(code(&out), 2);
    let out = ncyc(&["construct", "rs_2to3m", "--q", "8", "--k", "4"]);
    assert_eq!(code(&out), 2);
    let out = ncyc(&["construct", "no_such_family", "--q", "8"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_xq_h_alpha_one_is_not_a_permutation() {
    let out = ncyc(&["construct", "xq_h_alpha", "--q", "4", "--alpha", "1", "--verify"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["check"]["oracle"]["bijective"], false);
    assert_eq!(v["instance"]["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn criterion_monomial() {
    let out = ncyc(&[
        "criterion",
        "monomial",
        "--p",
        "2",
        "--n",
        "6",
        "--d",
        "2",
        "--cycle",
        "6",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["holds"], true);
    let out = ncyc(&[
        "criterion",
        "monomial",
        "--p",
        "2",
        "--n",
        "6",
        "--d",
        "2",
        "--cycle",
        "3",
    ]);
    assert_eq!(code(&out), 1);
    let out = ncyc(&[
        "criterion",
        "monomial",
        "--p",
        "2",
        "--n",
        "6",
        "--d",
        "3",
        "--cycle",
        "2",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn criterion_rs_triple_with_q_expression() {
    let out = ncyc(&[
        "criterion",
        "rs-triple",
        "--p",
        "2",
        "--n",
        "9",
        "--h",
        "1+x^3+x^6",
        "--r",
        "1",
        "--s",
        "73",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["holds"], true);
}

#[test]
fn criterion_hypothesis_failure_prints_verdict() {
    // h(0) = 0 violates the hypotheses
    let out = ncyc(&[
        "criterion",
        "xh-lambda",
        "--p",
        "5",
        "--n",
        "2",
        "--q",
        "5",
        "--h",
        "x",
        "--cycle",
        "2",
    ]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["holds"], false);
    assert!(!v["hypothesis_failures"].as_array().unwrap().is_empty());
}

#[test]
fn criterion_closed_inverse() {
    let out = ncyc(&[
        "criterion",
        "closed-inverse",
        "--p",
        "2",
        "--n",
        "3",
        "--f",
        "x^2",
        "--inv",
        "x^4",
    ]);
    assert_eq!(code(&out), 0);
    let out = ncyc(&[
        "criterion",
        "closed-inverse",
        "--p",
        "2",
        "--n",
        "3",
        "--f",
        "x^2",
        "--inv",
        "x^2",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn search_commands() {
    let out = ncyc(&["search", "k2to3m", "--q", "64"]);
    assert_eq!(code(&out), 0);
    assert!(json(&out).as_array().unwrap().contains(&Value::from(45)));

    let out = ncyc(&["--csv", "search", "jieguo", "--q", "64"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("t,m,degenerate\n0,0,true\n"));
    assert!(text.contains("\n25,5,false\n"));

    let out = ncyc(&["search", "jieguo", "--q", "128"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn walsh_involution_check() {
    let out = ncyc(&["walsh", "--p", "2", "--n", "4", "--poly", "x^8", "--check-involution"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["symmetric"], false);
    let out = ncyc(&["walsh", "--p", "2", "--n", "4", "--poly", "x^4", "--check-involution"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["symmetric"], true);
}

#[test]
fn fuzz_emits_records_then_summary() {
    let out = ncyc(&["fuzz", "involution_cor", "--seed", "3", "--trials", "6"]);
    assert_eq!(code(&out), 0);
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 7);
    let summary = &lines[6];
    assert_eq!(summary["trials"], 6);
    assert_eq!(summary["disagree"], 0);
    assert_eq!(lines[0]["kind"], "valid");
}
