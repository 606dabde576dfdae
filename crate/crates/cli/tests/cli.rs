use std::process::{Command, Output};

use serde_json::Value;

fn perfect(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfect"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn envelope(args: &[&str]) -> (i32, String, Value) {
    let out = perfect(args);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout}"));
    (out.status.code().unwrap(), stdout, value)
}

fn fraction(s: &str) -> (u128, u128) {
    let (a, b) = s.split_once('/').unwrap();
    (a.parse().unwrap(), b.parse().unwrap())
}

/// Every number anywhere in the document must be a string of digits or a fraction.
fn assert_no_json_numbers(v: &Value) {
    match v {
        Value::Number(n) => panic!("bare number {n}"),
        Value::Array(items) => items.iter().for_each(assert_no_json_numbers),
        Value::Object(map) => map.values().for_each(assert_no_json_numbers),
        _ => {}
    }
}

const COMMANDS: &[&[&str]] = &[
    &["--json", "sigma", "28"],
    &["--json", "sigma", "0"],
    &["--json", "factor", "8128"],
    &["--json", "factor", "1"],
    &["--json", "perfect-scan", "10000"],
    &["--json", "decompose", "33550336"],
    &["--json", "decompose", "675"],
    &["--json", "decompose", "225"],
    &["--json", "decompose", "12"],
    &["--json", "mersenne", "--max-k", "40"],
    &["--json", "series", "10000", "--certify"],
    &["--json", "series", "--limit", "5"],
];

#[test]
fn perfect_scan_lists_the_four_below_ten_thousand() {
    let (code, _, v) = envelope(&["--json", "perfect-scan", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(
        v["result"]["perfect"],
        serde_json::json!(["6", "28", "496", "8128"])
    );
    assert_eq!(v["exact"], Value::Bool(true));
    assert_eq!(v["error"], Value::Null);

    let text = perfect(&["perfect-scan", "--limit", "10000"]);
    assert_eq!(
        String::from_utf8(text.stdout).unwrap(),
        "6\n28\n496\n8128\n"
    );
}

#[test]
fn sigma_at_zero_is_a_domain_error() {
    let (code, _, v) = envelope(&["--json", "sigma", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "ZERO_INPUT");
    assert_eq!(v["error"]["message"], "sigma undefined at 0");
    assert_eq!(v["result"], Value::Null);

    let text = perfect(&["sigma", "0"]);
    assert_eq!(text.status.code(), Some(2));
    assert!(String::from_utf8(text.stderr)
        .unwrap()
        .contains("sigma undefined at 0"));
}

#[test]
fn sigma_reports_perfection() {
    let (code, _, v) = envelope(&["--json", "sigma", "496"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["sigma"], "992");
    assert_eq!(v["result"]["perfect"], Value::Bool(true));
}

#[test]
fn decompose_routes_by_parity() {
    let (code, _, v) = envelope(&["--json", "decompose", "8128"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["parity"], "even");
    assert_eq!(v["result"]["form"]["k"], "7");
    assert_eq!(v["result"]["form"]["mersenne"], "127");

    let (code, _, v) = envelope(&["--json", "decompose", "33075"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["parity"], "odd");
    // 33075 = 3^3 5^2 7^2
    assert_eq!(
        (
            &v["result"]["form"]["p"],
            &v["result"]["form"]["i"],
            &v["result"]["form"]["m"]
        ),
        (&Value::from("3"), &Value::from("3"), &Value::from("35"))
    );

    let (code, _, v) = envelope(&["--json", "decompose", "225"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "NO_ODD_EXPONENT");

    let (code, _, v) = envelope(&["--json", "decompose", "12"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "NOT_PERFECT");
}

#[test]
fn mersenne_sweep() {
    let (code, _, v) = envelope(&["--json", "mersenne", "31"]);
    assert_eq!(code, 0);
    let ks: Vec<&str> = v["result"]["primes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["k"].as_str().unwrap())
        .collect();
    assert_eq!(ks, ["2", "3", "5", "7", "13", "17", "19", "31"]);
}

#[test]
fn series_certificate_concludes_below_four() {
    let (code, _, v) = envelope(&["--json", "series", "10000", "--certify"]);
    assert_eq!(code, 0);
    let cert = &v["result"]["certificate"];
    assert_eq!(cert["conclusion"]["bound"], "4/1");
    assert_eq!(cert["conclusion"]["relation"], "lt");
    let (a, b) = fraction(cert["conclusion"]["total"].as_str().unwrap());
    assert!(a < 4 * b);
    // 1/6 + 1/28 + 1/496 + 1/8128
    assert_eq!(v["result"]["sum"]["total"], "1082183/5291328");
    for step in cert["steps"].as_array().unwrap() {
        let rel = step["relation"].as_str().unwrap();
        assert!(rel == "le" || rel == "lt", "{rel}");
    }
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["sigma", "abc"][..],
        &["sigma", "-5"],
        &["perfect-scan"],
        &["perfect-scan", "10", "--limit", "20"],
        &["frobnicate"],
        &["series", "10", "--bogus"],
        &[],
    ] {
        assert_eq!(perfect(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(perfect(&["--help"]).status.code(), Some(0));
    assert_eq!(perfect(&["--version"]).status.code(), Some(0));
}

#[test]
fn structured_output_is_canonical() {
    for args in COMMANDS {
        let (code, stdout, v) = envelope(args);
        assert!(code == 0 || code == 2, "{args:?}");
        assert_eq!(format!("{v}\n"), stdout, "{args:?}");
        assert_eq!(v["exact"], Value::Bool(true));
        assert_no_json_numbers(&v);
    }
}

#[test]
fn no_float_literals_in_any_output() {
    let float = |s: &str| {
        s.split(|c: char| !(c.is_ascii_alphanumeric() || c == '.' || c == '-' || c == '+'))
            .any(|tok| {
                tok.contains('.')
                    && tok.chars().any(|c| c.is_ascii_digit())
                    && tok.parse::<f64>().is_ok()
            })
    };
    for args in COMMANDS {
        let json = perfect(args);
        let text = perfect(&args[1..]);
        for out in [json.stdout, json.stderr, text.stdout, text.stderr] {
            let s = String::from_utf8(out).unwrap();
            assert!(!float(&s), "{args:?}: {s}");
        }
    }
}

#[test]
fn memory_cap_from_environment_switches_strategy_not_result() {
    let out = Command::new(env!("CARGO_BIN_EXE_perfect"))
        .args(["--json", "perfect-scan", "100000"])
        .env("PERFECT_SIEVE_MEMORY_CAP", "1024")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["result"]["perfect"],
        serde_json::json!(["6", "28", "496", "8128"])
    );
}
