use std::process::Command;

use kappa::frontend::cli::{run, JsonReport};

fn kappa(args: &[&str]) -> (String, i32) {
    let out = run(std::iter::once("kappa").chain(args.iter().copied()));
    (out.output, out.code)
}

#[test]
fn star_of_coordinates() {
    let (out, code) = kappa(&["--dim", "3", "--order", "2", "--realization", "left", "star", "x0", "x1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x0 * x1 = x0*x1 - i*a1*x0");
    let (out, _) = kappa(&["--dim", "3", "--order", "2", "--realization", "right", "star", "x0", "x1"]);
    assert_eq!(out.trim(), "x0 * x1 = x0*x1 + i*a0*x1");
}

#[test]
fn plane_wave_kernel() {
    let (out, code) = kappa(&["--dim", "2", "--order", "1", "--realization", "left", "star", "exp(i*k.x)", "exp(i*q.x)"]);
    assert_eq!(code, 0);
    assert_eq!(out, "D_0 = k0 + q0 - a0*k0*q0 + a1*k0*q1\nD_1 = k1 + q1 - a0*k1*q0 + a1*k1*q1\n");
}

#[test]
fn natural_jacobian() {
    let (out, code) = kappa(&["--dim", "2", "--order", "2", "jacobian"]);
    assert_eq!(code, 0);
    let first = out.lines().next().unwrap();
    assert!(first.ends_with("= 1 - 1/2*a0^2*k0^2 + 1/2*a0^2*k1^2 + 1/2*a1^2*k0^2 - 1/2*a1^2*k1^2"), "{first}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["star", "x0 +", "x1"][..],
        &["--realization", "foo", "kernel"],
        &["--dim", "1", "kernel"],
        &["--dim", "9", "kernel"],
        &["verify", "nonsense"],
        &["coproduct", "x0"],
        &["frobnicate"],
    ] {
        let (out, code) = kappa(args);
        assert_eq!(code, 2, "{args:?}: {out}");
    }
}

#[test]
fn json_report_round_trips() {
    let (out, code) = kappa(&["--dim", "2", "--order", "1", "--format", "json", "verify", "kappa"]);
    assert_eq!(code, 0);
    let rep: JsonReport = serde_json::from_str(&out).unwrap();
    assert_eq!(rep.command, "verify kappa");
    assert_eq!((rep.config.dim, rep.config.order), (2, 1));
    assert_eq!(rep.config.realizations, ["left", "right", "symmetric", "natural", "ms"]);
    assert!(!rep.results.is_empty());
    assert!(rep.results.iter().all(|c| c.residual_zero));
    assert_eq!(serde_json::to_string_pretty(&rep).unwrap() + "\n", out);
}

#[test]
fn failing_suite_exits_1() {
    let (out, code) = kappa(&["--dim", "2", "--order", "1", "--realization", "left", "verify", "translation"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("FAIL"));
}

#[test]
fn binary_lists_realizations() {
    let out = Command::new(env!("CARGO_BIN_EXE_kappa")).args(["realizations", "list"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let names: Vec<&str> = text.lines().map(|l| l.split(" = ").next().unwrap()).collect();
    assert_eq!(names, ["left", "right", "symmetric", "natural", "ms"]);
}
