use std::process::Command;

use serde_json::Value;
use twistk::report::Status;
use twistk::spec::{build, parse_spec, print_spec, preset, SpecError, PRESETS};
use twistk::suite::run_suite;

fn twistk(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_twistk")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8 output"))
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let (code, out) = twistk(&full);
    (code, serde_json::from_str(&out).expect("json report"))
}

#[test]
fn presets_and_inline_specs_round_trip() {
    let mut texts: Vec<String> = PRESETS.iter().map(|p| preset(p).unwrap()).collect();
    texts.push(r#"{"construct": ["crossed_product", ["clifford", 1, 1], ["z2_conj_by", "e1e2"]]}"#.into());
    texts.push(r#"{"construct": ["tensor", "complex", ["group_algebra", ["cyclic", 3]]], "involution": "identity"}"#.into());
    texts.push(r#"{"construct": ["matrix", "quaternions", 2], "anti_involution": ["conjugate_transpose", "conjugation"]}"#.into());
    for text in texts {
        let spec = parse_spec(&text).unwrap();
        let printed = print_spec(&spec);
        assert_eq!(parse_spec(&printed).unwrap(), spec, "{text}");
        assert_eq!(print_spec(&parse_spec(&printed).unwrap()), printed);
    }
}

#[test]
fn spec_examples_parse() {
    let c02 = build(&parse_spec(r#"{"construct": ["clifford", 0, 2]}"#).unwrap()).unwrap();
    assert_eq!(c02.algebra.dim(), 4);
    let h = build(&parse_spec(r#"{"construct": ["quaternions"], "involution": ["conj_by", "i"]}"#).unwrap()).unwrap();
    assert_eq!(h.algebra.dim(), 4);
    assert!(h.involution.is_some());
    let bad = parse_spec(r#"{"structure": [[["1/0"]]], "unit": ["1"]}"#).unwrap_err();
    assert!(matches!(bad, SpecError::Validation { .. }), "{bad:?}");
    let syntax = parse_spec("{\n  \"construct\": [\"reals\",\n}").unwrap_err();
    assert!(matches!(syntax, SpecError::Parse { line: 3, .. }), "{syntax:?}");
}

#[test]
fn kr_of_quaternions_at_a_point() {
    let (code, r) = json(&["kr", "--fiber", "hquat-conj-i", "--space", "point"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["results"]["kr"]["rank"], 1);
    assert_eq!(r["results"]["kr"]["generators"][0]["type"], "C");
}

#[test]
fn diagonal_conjugation_on_m4r_is_not_balanced() {
    let (code, r) = json(&["balanced", "--spec", "m4r-diag111m1"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["balanced"], "no");
    assert_eq!(r["results"]["odd_dim"], 6);
}

#[test]
fn nonassociative_input_is_an_error() {
    let (code, r) = json(&["wedderburn", "--spec", "nonassoc-example"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["kind"], "NotAssociative");
}

#[test]
fn unusable_inputs_exit_two() {
    let (code, r) = json(&["crosscheck", "--spec", r#"{"construct": "complex", "anti_involution": "identity"}"#]);
    assert_eq!(code, 2, "{r}");
    let (code, _) = json(&["suite", "--filter", "no-such-case"]);
    assert_eq!(code, 2);
}

#[test]
fn text_output_has_no_extra_numbers() {
    let commands: [&[&str]; 5] = [
        &["kr", "--fiber", "hquat-conj-i", "--space", "swap"],
        &["balanced", "--spec", "m4r-diag111m1"],
        &["analyze", "--spec", "c11"],
        &["gw", "--spec", "hquat-conj", "--epsilon", "-1"],
        &["morita", "--spec", "complex-conj", "--n", "3"],
    ];
    for args in commands {
        let (_, text) = twistk(args);
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let (_, machine) = twistk(&full);
        for line in text.lines() {
            for token in line.split(|c: char| !c.is_ascii_digit() && c != '-' && c != '/') {
                let token = token.trim_matches(|c| c == '-' || c == '/');
                if token.chars().any(|c| c.is_ascii_digit()) {
                    assert!(machine.contains(token), "{args:?}: {token:?} from {line:?} missing in json");
                }
            }
        }
    }
}

#[test]
fn filter_selects_crossed_product_examples() {
    let r = run_suite(1, 2, Some("ex:AG"));
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["ex:AG/C-conj", "ex:AG/C-trivial", "ex:AG/H-conj-i"]);
    assert_eq!(r.status, Status::Pass);
}

#[test]
fn seeded_cases_are_deterministic() {
    let a = run_suite(7, 1, Some("self-adjoint/H"));
    let b = run_suite(7, 3, Some("self-adjoint/H"));
    assert_eq!(a.checks, b.checks);
    assert_eq!(a.to_json(), b.to_json());
    let verdicts = |seed| run_suite(seed, 2, Some("ss")).checks.iter().map(|c| c.status).collect::<Vec<_>>();
    assert_eq!(verdicts(1), verdicts(2));
}

#[test]
fn full_suite_passes() {
    let r = run_suite(1, 4, None);
    assert!(r.checks.len() >= 20);
    for c in &r.checks {
        assert_eq!(c.status, Status::Pass, "{} ({}): {}", c.id, c.anchor, c.detail);
    }
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.results["passed"], r.checks.len());
}
