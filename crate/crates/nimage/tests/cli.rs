//! Command-line behavior: outputs, exit codes, report formats.

use std::process::Command;

use nimage::expr::parse_at;
use nimage::numbers::parse_rational;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("nimage").chain(args.iter().copied());
    let code = nimage::cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

/// Every expression string re-parses to an expression that prints identically.
fn assert_round_trip(v: &Value) {
    let center = parse_rational(v["problem"]["center"].as_str().unwrap_or("0")).unwrap();
    for key in ["xi", "alpha", "solutions"] {
        for item in v[key].as_array().unwrap() {
            let text = item["expr"].as_str().unwrap();
            let e = parse_at(text, &center).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(e.to_string(), text);
        }
    }
}

#[test]
fn airy_text_report() {
    let (code, out, _) = run(&["solve2", "--a", "x", "--terms", "7", "--format", "text"]);
    assert_eq!(code, 0);
    let y1 = out.lines().find(|l| l.starts_with("y1 = ")).unwrap();
    assert!(y1.ends_with("- x^3/6 - 1"), "{y1}");
    assert!(out.contains("xi_1(-1) = -x^6/180"));
}

#[test]
fn single_coefficient() {
    let (code, out, _) = run(&["xi", "--a", "x", "--k", "1", "--arg", "-1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-x^6/180");
    let v = json(&[
        "xi", "--a", "x", "--k", "1", "--arg", "-2", "--format", "json",
    ]);
    assert_eq!(v["xi"][0]["expr"], "-x^7/280");
    assert_eq!(v["xi"][0]["n"], 2);
}

#[test]
fn selftests_pass() {
    for suite in ["leibniz", "closedforms", "crosscheck"] {
        let (code, out, _) = run(&["selftest", suite]);
        assert_eq!(code, 0, "{out}");
        assert!(out.lines().all(|l| l.starts_with("PASS ")), "{out}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["xi", "--a", "x+", "--k", "1", "--arg", "-1"]).0, 2);
    assert_eq!(
        run(&["xi", "--a", "ln(x)*exp(x)", "--k", "1", "--arg", "-1"]).0,
        3
    );
    assert_eq!(run(&["solve2", "--a", "x", "--grid", "1:0:5"]).0, 2);
    assert_eq!(run(&["solve2", "--a", "x", "--digits", "20"]).0, 2);
    assert_eq!(run(&["solvem", "--order", "3", "--coeff", "a4=x"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    let (code, _, err) = run(&[
        "particular",
        "--order",
        "2",
        "--coeff",
        "b2=-1",
        "--rhs",
        "1",
        "--homog",
        "exp(2*x)",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("homogeneous"), "{err}");
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn json_schema_and_round_trip() {
    let v = json(&[
        "solve2", "--a", "exp(x)", "--terms", "3", "--format", "json", "--grid", "0:1:3",
    ]);
    for key in ["problem", "xi", "alpha", "solutions", "residual"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["xi"].as_array().unwrap().len(), 8);
    assert_eq!(v["residual"].as_array().unwrap().len(), 3);
    assert!(v["residual"][0]["x"].is_number());
    assert_round_trip(&v);

    let v = json(&[
        "solvem", "--order", "3", "--coeff", "a3=ln(x)", "--terms", "2", "--grid", "0.5:1:2",
        "--format", "json",
    ]);
    assert_eq!(v["alpha"].as_array().unwrap().len(), 3);
    assert_eq!(v["residual"][1]["delta"], "undefined");
    assert_round_trip(&v);

    let v = json(&[
        "solve2",
        "--a",
        "(x+1)^(-2)",
        "--center",
        "-1",
        "--terms",
        "2",
        "--grid",
        "0:1:2",
        "--format",
        "json",
    ]);
    assert_eq!(v["xi"][0]["expr"], "ln(x+1)");
    assert_round_trip(&v);
}

#[test]
fn deterministic_output() {
    let args = [
        "solvem", "--order", "3", "--coeff", "a3=ln(x)", "--coeff", "a1=x", "--terms", "2",
        "--format", "json",
    ];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn csv_report() {
    let (code, out, _) = run(&[
        "solve2", "--a", "x", "--terms", "7", "--grid", "1:2:2", "--format", "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "x,delta");
    assert_eq!(lines.len(), 3);
    let d: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!(d < 1e-15);
}

#[test]
fn general_second_order_reports_multiplier() {
    let v = json(&[
        "solve2g", "--a1", "2", "--a2", "x - 1", "--terms", "2", "--format", "json",
    ]);
    assert_eq!(v["problem"]["reduced"], "x");
    assert_eq!(v["problem"]["multiplier"], "exp(x)");
}

#[test]
fn sign_convention_flag() {
    let a = json(&[
        "solvem", "--order", "2", "--coeff", "a2=x", "--terms", "2", "--format", "json",
    ]);
    let b = json(&[
        "solvem", "--order", "2", "--coeff", "a2=-x", "--lhs", "--terms", "2", "--format", "json",
    ]);
    assert_eq!(a["solutions"], b["solutions"]);
}

#[test]
fn particular_paths() {
    let v = json(&[
        "particular",
        "--order",
        "2",
        "--coeff",
        "b2=-1",
        "--rhs",
        "exp(2*x)",
        "--homog",
        "exp(x)",
        "--format",
        "json",
    ]);
    assert_eq!(v["solutions"][0]["expr"], "exp(2*x)/3");
    assert_eq!(v["problem"]["method"], "symbolic");

    let y1 = json(&["solve2", "--a", "x", "--format", "json"])["solutions"][0]["expr"]
        .as_str()
        .unwrap()
        .to_string();
    let v = json(&[
        "particular",
        "--order",
        "2",
        "--coeff",
        "b2=-x",
        "--rhs",
        "1",
        "--homog",
        &y1,
        "--unchecked",
        "--grid",
        "0:1:201",
        "--format",
        "json",
    ]);
    assert_eq!(v["problem"]["method"], "numeric");
    assert_eq!(v["values"].as_array().unwrap().len(), 201);
    let worst = v["residual"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["delta"].as_f64().unwrap())
        .fold(0.0, f64::max);
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn latex_output() {
    let (code, out, _) = run(&["solve2", "--a", "x", "--terms", "1", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(
        out.contains("\\xi_{1}(-1) &= -\\frac{1}{180} x^{6}"),
        "{out}"
    );
    assert!(out.contains("\\begin{align*}") && out.contains("% kind: solve2"));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_nimage");
    let ok = Command::new(bin)
        .args(["xi", "--a", "x", "--k", "1", "--arg", "-1"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "-x^6/180");
    let bad = Command::new(bin)
        .args(["xi", "--a", "ln(x)*exp(x)", "--k", "0", "--arg", "-1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(3));
    assert!(!bad.stderr.is_empty());
}
