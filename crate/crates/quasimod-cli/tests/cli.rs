//! End-to-end checks of the binary: output schema, determinism, exit codes,
//! and the JSON round-trip back through the library.

use quasimod::quasimodular::{fit_quasimodular, QmPoly};
use quasimod::rational::parse_rat;
use quasimod::series::QSeries;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasimod"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn count_h11_json_round_trips_through_refit() {
    let out = run(&[
        "count", "--profile", "(2),(2)", "--order", "17", "--variant", "connected",
        "--fit", "6", "--output", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "count");
    assert_eq!(v["profile"], "(2),(2)");
    let coeffs: Vec<QSeries> = vec![QSeries::from_coeffs(
        v["series"]["coeffs"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| parse_rat(c.as_str().unwrap()).unwrap())
            .collect(),
    )];
    let series = &coeffs[0];
    assert_eq!(series.order(), 17);
    assert_eq!(series.coeff(2), parse_rat("2").unwrap());

    // re-fit the parsed series and compare against the serialized polynomial
    let refit = fit_quasimodular(series, 6).unwrap();
    let mut from_json = QmPoly::zero();
    for term in v["qmpoly"].as_array().unwrap() {
        let exp = term["exp"].as_array().unwrap();
        let m = [
            exp[0].as_u64().unwrap() as u32,
            exp[1].as_u64().unwrap() as u32,
            exp[2].as_u64().unwrap() as u32,
        ];
        from_json.add_term(m, parse_rat(term["coeff"].as_str().unwrap()).unwrap());
    }
    assert_eq!(refit, from_json);
}

#[test]
fn output_is_byte_identical_across_invocations() {
    let args = [
        "graphs", "--profile", "(3)", "--order", "10", "--per-graph", "--output", "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn zconst_prints_the_closed_form() {
    let out = run(&["zconst", "--power", "2", "--fit"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-2*G2 + 1/6"), "got: {text}");
}

#[test]
fn count_empty_profile_gives_partition_numbers() {
    let out = run(&["count", "--profile", "", "--order", "5", "--variant", "all", "--output", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let coeffs: Vec<&str> =
        v["series"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, vec!["1", "1", "2", "3", "5", "7"]);
}

#[test]
fn zero_series_serializes_padded() {
    let out = run(&["count", "--profile", "(3)", "--order", "2", "--variant", "connected", "--output", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let coeffs: Vec<&str> =
        v["series"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs, vec!["0", "0", "0"]);
}

#[test]
fn exit_codes() {
    // usage error: malformed profile
    let out = run(&["count", "--profile", "(2)(2)", "--order", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // fit failure: order too small
    let out = run(&["count", "--profile", "(2),(2)", "--order", "8", "--fit", "6"]);
    assert_eq!(out.status.code(), Some(3));
    // budget exceeded
    let out = run(&[
        "count", "--profile", "(3)", "--order", "8", "--variant", "all",
        "--oracle", "8", "--oracle-budget", "10",
    ]);
    assert_eq!(out.status.code(), Some(5));
    // unknown variant is a usage error
    let out = run(&["count", "--profile", "(3)", "--order", "4", "--variant", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sv_h11_is_five_quarters_of_the_count() {
    let sv = run(&[
        "sv", "--profile", "(2),(2)", "--p", "-1", "--order", "8", "--variant", "connected",
        "--output", "json",
    ]);
    assert!(sv.status.success());
    let v: serde_json::Value = serde_json::from_slice(&sv.stdout).unwrap();
    let coeffs: Vec<&str> =
        v["series"]["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
    assert_eq!(coeffs[2], "5/2");
    assert_eq!(coeffs[3], "20");
}

#[test]
fn triple_and_cterm_commands() {
    let out = run(&["triple", "--win", "5", "--wout", "5", "--mu", "(3)"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "2");
    let out = run(&["triple", "--win", "5", "--wout", "5", "--mu", "(3)", "--completed"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "49/12");

    let out = run(&["cterm", "--graph", "1-2,1-2,1-2", "--m", "0,0,0", "--order", "17", "--fit", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-16*G2^3 + 4*G2*G4 + 7/30*G6"), "got: {text}");

    // odd exponent is rejected
    let out = run(&["cterm", "--graph", "1-2", "--m", "1", "--order", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ssz_check_command() {
    let out = run(&["ssz-check", "--m", "1", "--n", "1", "--ell", "3", "--radius", "6"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1/6*u1^2 - 1/12"), "got: {text}");
}
