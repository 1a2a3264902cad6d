use std::path::PathBuf;

use rees_hodge::cli::dispatch_to;
use rees_hodge::report::{ConditionReport, Status};
use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("rees-hodge").chain(args.iter().copied());
    let code = dispatch_to(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn report(args: &[&str]) -> (i32, ConditionReport) {
    let (code, out, err) = run(args);
    let r = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, r)
}

fn status(r: &ConditionReport, name: &str) -> Status {
    r.conditions.iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no condition {name}")).status.clone()
}

#[test]
fn check_mhs_uses_the_shift() {
    let u = data("u.json");
    let (code, r) = report(&["check-mhs", &u, "--shift", "-2"]);
    assert_eq!(code, 0);
    assert!(r.passes());
    let (code, r) = report(&["check-mhs", &u]);
    assert_eq!(code, 1);
    assert_eq!(status(&r, "shifted-mhs"), Status::Fail);
    assert!(!r.conditions[0].witness.is_null());
}

#[test]
fn check_mhc_on_the_sphere_data() {
    let (code, r) = report(&["check-mhc", &data("sphere_graded.json")]);
    assert_eq!(code, 0, "{}", r.to_text());
    assert_eq!(status(&r, "MHC"), Status::Pass);
    assert_eq!(status(&r, "Str"), Status::Pass);
}

#[test]
fn sphere_verify_passes() {
    let (code, r) = report(&["sphere", "verify"]);
    assert_eq!(code, 0, "{}", r.to_text());
    assert!(r.conditions.len() > 10);
}

#[test]
fn cohomology_reports_all_conditions() {
    for file in ["p2.json", "p1xp1.json"] {
        let (code, r) = report(&["cohomology", &data(file), "--dmax", "6"]);
        assert_eq!(code, 0, "{}", r.to_text());
        for name in ["A1", "A2", "A3", "Fl", "Str", "MHC"] {
            assert_eq!(status(&r, name), Status::Pass, "{file} {name}");
        }
        assert_eq!(r.metadata.d_max, Some(6));
    }
}

#[test]
fn breen_branches() {
    let (u, up) = (data("u.json"), data("u_prime.json"));
    let (code, out, _) = run(&["breen", "--m", "2", "--mprime", "4", &u, &up]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "HomSpace");
    assert_eq!(v["dim"], 1);
    let (_, out, _) = run(&["breen", "--m", "2", "--mprime", "5", &u, &up]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["kind"], "ExtGroup");
    assert_eq!(v["d"], 3);
    let (code, _, err) = run(&["breen", "--m", "1", "--mprime", "4", &u, &up]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}

#[test]
fn rees_round_trip_through_json() {
    let (code, out, _) = run(&["rees", "to-module", &data("filtration.json")]);
    assert_eq!(code, 0);
    let module: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(module["free"].as_array().unwrap().len(), 2);
    let (code, out, _) = run(&["rees", "annihilators", &data("torsion_module.json"), "--max", "3"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let dims: Vec<i64> = v["chain"].as_array().unwrap().iter().map(|s| s["dim"].as_i64().unwrap()).collect();
    assert_eq!(dims, vec![0, 1, 1]);
    let (code, r) = report(&["rees", "a1", &data("torsion_module.json")]);
    assert_eq!(code, 1);
    assert_eq!(status(&r, "A1"), Status::Fail);
}

#[test]
fn shift_solves_for_the_missing_value() {
    let (code, out, _) = run(&["shift", "--given", "w=0,i=2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["h"], -2);
    let (_, out, _) = run(&["shift", "--given", "h=-4,i=3"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["w"], -1);
    assert_eq!(run(&["shift", "--given", "h=1"]).0, 2);
}

#[test]
fn spectral_pages_end_at_cohomology() {
    let (code, out, _) = run(&["spectral", &data("sphere_graded.json"), "--filtration", "w", "--pages", "3"]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pages"].as_array().unwrap().len(), 4);
}

#[test]
fn malformed_input_exits_with_two() {
    let (code, _, err) = run(&["check-mhs", &data("bad_scalar.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("line"), "{err}");
    assert_eq!(run(&["check-mhs", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["no-such-command"]).0, 2);
}

#[test]
fn text_format_prints_statuses() {
    let (code, out, _) = run(&["--format", "text", "check-mhs", &data("u.json"), "--shift", "-2"]);
    assert_eq!(code, 0);
    assert!(out.contains("PASS"), "{out}");
}
