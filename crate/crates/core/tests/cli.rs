use std::process::Command;

use euclid_lab::report::ReportEnvelope;
use euclid_lab::Limits;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_euclid-lab")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, ReportEnvelope) {
    let (status, stdout, stderr) = run(&[args, &["--json"]].concat());
    assert!(stderr.is_empty(), "{args:?}: {stderr}");
    let env = ReportEnvelope::from_json(&stdout).unwrap();
    assert!(env.verify_witnesses(&Limits::default()).unwrap(), "{args:?}");
    (status, env)
}

const C13: [&str; 2] = ["--monoid", "congruence 1 mod 3"];
const Q2: [&str; 2] = ["--monoid", "quadratic 2"];

#[test]
fn statuses_across_commands() {
    let cases: &[(&[&str], &[&str], i32)] = &[
        (&["gcd", "40", "100"], &C13, 1),
        (&["gcd", "4", "10"], &C13, 0),
        (&["gcd", "35+14*sqrt(2)", "7+14*sqrt(2)"], &Q2, 1),
        (&["bezout", "240", "46"], &[], 0),
        (&["trace", "4", "10"], &[], 0),
        (&["divisors", "100"], &C13, 0),
        (&["factor", "100"], &C13, 0),
        (&["factor", "(35,14)"], &Q2, 0),
        (&["irreducible", "3+8*sqrt(2)"], &Q2, 0),
        (&["irreducible", "(7,7)"], &Q2, 1),
        (&["irreducible", "1"], &[], 1),
        (&["proportion", "--pythagorean", "4", "10", "100", "250"], &C13, 0),
        (&["proportion", "--pythagorean", "--canonical", "4", "10", "100", "250"], &C13, 1),
        (&["proportion", "--fraction", "4", "10", "10", "25"], &C13, 0),
        (&["proportion", "--fraction", "1", "2", "2", "3"], &[], 1),
        (&["proportion", "--vii19", "4", "6", "6", "9"], &[], 0),
        (&["proportion", "--alternando", "4", "6", "6", "9"], &[], 0),
        (&["proportion", "--repair", "4", "6", "6", "9"], &[], 0),
        (&["proportion", "--repair", "2", "3", "5", "7"], &[], 0),
        (&["proportion", "--repair", "4", "10", "100", "250"], &C13, 1),
        (&["proportion", "--vii6", "--canonical", "4", "6", "6", "9"], &[], 0),
        (&["proportion", "--vii6", "(1,0)", "(0,1)", "(2,0)", "(0,2)"], &Q2, 0),
        (&["least-pair", "12", "18"], &[], 0),
        (&["survey", "--transitivity", "--bound", "60"], &[], 0),
        (&["survey", "--transitivity", "--bound", "100"], &C13, 1),
        (&["survey", "--euclid-lemma", "--bound", "50"], &[], 0),
        (&["survey", "--euclid-lemma", "--bound", "100"], &C13, 1),
        (&["survey", "--three-properties", "--bound", "30"], &[], 0),
    ];
    for (args, monoid, expected) in cases {
        let full = [*args, *monoid].concat();
        let (status, env) = json(&full);
        assert_eq!(status, *expected, "{full:?}");
        assert_eq!(env.witnesses.is_empty(), status == 0, "{full:?}");
        let (text_status, text, stderr) = run(&full);
        assert_eq!(text_status, status);
        assert!(stderr.is_empty() && text.starts_with("monoid: "));
    }
}

#[test]
fn payload_contents() {
    let (_, env) = json(&["gcd", "40", "100", C13[0], C13[1]]);
    assert_eq!(env.payload["common_divisors"], serde_json::json!(["1", "4", "10"]));
    assert!(env.payload["g"].is_null());

    let (_, env) = json(&["gcd", "40", "100", "--nontrivial-divisors", C13[0], C13[1]]);
    assert_eq!(env.payload["common_divisors"], serde_json::json!(["4", "10"]));

    let (_, env) = json(&["trace", "4", "10"]);
    let kinds: Vec<&str> = env.payload["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds, ["subtract", "subtract", "swap", "terminate"]);
    assert_eq!(env.payload["result"], "2");

    let (_, env) = json(&["least-pair", "12", "18"]);
    assert_eq!((&env.payload["u"], &env.payload["v"]), (&"2".into(), &"3".into()));

    // (3+√2)(11+√2) = 35+14√2 as well.
    let (_, env) = json(&["factor", "(35,14)", Q2[0], Q2[1]]);
    assert_eq!(
        env.payload["factorizations"],
        serde_json::json!([["(1,2)", "(3,8)"], ["(3,1)", "(11,1)"], ["(7,0)", "(5,2)"]])
    );
}

#[test]
fn errors_use_stderr_and_status_2() {
    for args in [
        &["gcd", "1", "2", "--monoid", "congruence 2 mod 4"][..],
        &["gcd", "1", "2", "--monoid", "congruence 1 mod"],
        &["proportion", "--vii6", "4", "10", "10", "25", C13[0], C13[1]],
        &["least-pair", "4", "10", C13[0], C13[1]],
        &["factor", "3+8*sqrt(3)", Q2[0], Q2[1]],
        &["survey", "--three-properties", "--bound", "x"],
        &[],
    ] {
        let (status, stdout, stderr) = run(args);
        assert_eq!(status, 2, "{args:?}");
        assert!(stdout.is_empty());
        assert!(!stderr.is_empty());
    }
    let (_, _, stderr) = run(&["gcd", "1", "2", "--monoid", "congruence 2 mod 4"]);
    assert!(stderr.contains("not multiplicatively closed"), "{stderr}");
    let (_, _, stderr) = run(&["gcd", "1", "2", "--monoid", "congruence 1 mod"]);
    assert!(stderr.contains("line 1, column 17"), "{stderr}");
}

#[test]
fn schema_lists_every_emitted_kind() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../schema/report-1.0.schema.json")).unwrap();
    let kinds: Vec<&str> = schema["$defs"]["witness"]["oneOf"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["properties"]["kind"]["const"].as_str().unwrap())
        .collect();
    for args in [
        &["survey", "--three-properties", "--bound", "100", C13[0], C13[1]][..],
        &["proportion", "--vii19", "4", "10", "10", "25", C13[0], C13[1]],
        &["proportion", "--pythagorean", "1", "2", "2", "3"],
        &["proportion", "--fraction", "1", "2", "2", "3"],
        &["irreducible", "100", C13[0], C13[1]],
    ] {
        let (_, env) = json(args);
        assert_eq!(env.schema_version, "1.0");
        for w in &env.witnesses {
            let kind = serde_json::to_value(w).unwrap()["kind"].as_str().unwrap().to_string();
            assert!(kinds.contains(&kind.as_str()), "{kind}");
        }
    }
    assert_eq!(kinds.len(), 12);
}
