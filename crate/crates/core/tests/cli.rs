use std::process::Command;

use serde_json::Value;

use qdelannoy::cli::run;
use qdelannoy::cyclotomic::cyclotomic;
use qdelannoy::qcore::q_binomial;
use qdelannoy::qdelannoy::q_delannoy_def;
use qdelannoy::IntPoly;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("qdelannoy").chain(args.iter().copied());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn poly_field(v: &Value, key: &str) -> IntPoly {
    serde_json::from_value(v[key].clone()).unwrap()
}

#[test]
fn compute_json_round_trips() {
    for route in ["def", "alt", "rec"] {
        let (code, out, _) = invoke(&[
            "compute",
            "qdelannoy",
            "--h",
            "3",
            "--k",
            "4",
            "--route",
            route,
            "--json",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(poly_field(&v, "poly"), q_delannoy_def(3, 4));
    }
    let (_, out, _) = invoke(&["compute", "qbinom", "--h", "6", "--k", "3", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(poly_field(&v, "poly"), q_binomial(6, 3));
    let (_, out, _) = invoke(&["compute", "cyclotomic", "--n", "12", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(poly_field(&v, "poly"), cyclotomic(12).unwrap());
}

#[test]
fn text_output_is_canonical() {
    let (code, out, _) = invoke(&["compute", "qdelannoy", "--h", "2", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 + 2*q + 4*q^2 + 4*q^3 + 2*q^4");
    let (_, out, _) = invoke(&["compute", "delannoy", "--h", "5", "--k", "5"]);
    assert_eq!(out.trim(), "1683");
    let (code, out, _) = invoke(&["compute", "qdelannoy", "--h", "-1", "--k", "1"]);
    assert_eq!((code, out.trim()), (0, "0"));
}

#[test]
fn verify_thm2_json_summary() {
    let (code, out, _) = invoke(&[
        "verify", "thm2", "--max-n", "4", "--max-h", "4", "--max-k", "4", "--json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 100);
    assert_eq!(v["failed"], 0);
    assert_eq!(v["by_statement"]["thm2-odd"]["total"], 50);
    assert_eq!(v["by_statement"]["thm2-even"]["total"], 50);
}

#[test]
fn orbit_audit_json_residues_parse() {
    let (code, out, _) = invoke(&[
        "orbits", "audit", "--h", "1", "--k", "1", "--n", "3", "--json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["violation_count"], 0);
    assert_eq!(
        poly_field(&v, "total_residue"),
        poly_field(&v, "expected_residue")
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(invoke(&["compute", "bogus"]).0, 2);
    assert_eq!(
        invoke(&["orbits", "audit", "--h", "1", "--k", "1", "--n", "0"]).0,
        2
    );
    assert_eq!(invoke(&["verify", "thm2", "--jobs", "0"]).0, 2);
    assert_eq!(invoke(&[]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qdelannoy-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, out, _) = invoke(&[
        "compute",
        "sigma-poly",
        "--h",
        "2",
        "--k",
        "2",
        "--json",
        "--out",
        p,
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(poly_field(&v, "poly"), q_delannoy_def(2, 2));
}

#[test]
fn binary_matches_in_process_run() {
    let args = ["verify", "interp", "--max-h", "3", "--max-k", "3", "--json"];
    let bin = Command::new(env!("CARGO_BIN_EXE_qdelannoy"))
        .args(args)
        .output()
        .unwrap();
    let (code, out, _) = invoke(&args);
    assert_eq!(bin.status.code(), Some(code));
    assert_eq!(String::from_utf8(bin.stdout).unwrap(), out);
    let bad = Command::new(env!("CARGO_BIN_EXE_qdelannoy"))
        .arg("frobnicate")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
