use corner_calculus_cli::{kb, kc, Run};
use std::ffi::OsString;
use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn args(bin: &str, rest: &[&str]) -> Vec<OsString> {
    std::iter::once(bin).chain(rest.iter().copied()).map(OsString::from).collect()
}

fn run_kc(rest: &[&str]) -> Run {
    kc(args("kc", rest))
}

fn run_kb(rest: &[&str]) -> Run {
    kb(args("kb", rest))
}

fn json(r: &Run) -> serde_json::Value {
    assert!(r.stderr.is_empty(), "{}", r.stderr);
    serde_json::from_str(&r.stdout).expect("json output")
}

#[test]
fn dd_zero_suite_binary() {
    let out = Command::new(env!("CARGO_BIN_EXE_kc"))
        .args(["check", "dd-zero", "--seed", "7", "--count", "100", "--max-dim", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "corner-calculus/1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["instances"], 100);
}

#[test]
fn homology_of_simplex_faces() {
    let r = run_kc(&["homology", &data("faces-of-simplex.json")]);
    assert_eq!(r.code, 0);
    let v = json(&r);
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0]));
    assert_eq!(v["ranks"], serde_json::json!([3, 3, 1]));
    let md = run_kc(&["homology", &data("faces-of-simplex.json"), "--format", "md"]);
    assert!(md.stdout.contains("Betti numbers (1, 0, 0)"));
}

#[test]
fn malformed_input_exits_2() {
    let r = run_kc(&["canonicalize", &data("bad-rational.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("zero denominator"));
    assert_eq!(run_kc(&["boundary", &data("missing.json")]).code, 2);
    assert_eq!(run_kc(&["check", "no-such-suite"]).code, 2);
    assert_eq!(run_kc(&["check", "swap", "--count", "0"]).code, 2);
    assert_eq!(run_kc(&["check", "swap", "--format", "xml"]).code, 2);
    // a class file is not a chain file
    assert_eq!(run_kc(&["boundary", &data("circle.json")]).code, 2);
}

#[test]
fn preconditions_exit_3() {
    let r = run_kc(&["cap", &data("faces-of-simplex.json"), &data("cover-cochain.json")]);
    assert_eq!(r.code, 3);
    let z = run_kc(&["canonicalize", &data("square-quotient.json"), "--ring", "Z"]);
    assert_eq!(z.code, 3);
    assert!(z.stderr.contains("Q-algebra"));
    assert_eq!(run_kb(&["to-kh", &data("open-interval.json")]).code, 3);
}

#[test]
fn failed_checks_exit_1() {
    let r = run_kb(&["check-closed", &data("open-interval.json")]);
    assert_eq!(r.code, 1);
    assert_eq!(json(&r)["pass"], false);
    assert_eq!(run_kb(&["check-closed", &data("circle.json")]).code, 0);
}

#[test]
fn reports_are_byte_identical() {
    let a = run_kc(&["check", "swap", "--seed", "3", "--count", "20"]);
    let b = run_kc(&["check", "swap", "--seed", "3", "--count", "20", "--jobs", "4"]);
    assert_eq!(a.code, 0);
    assert_eq!(a, b);
    let c = run_kc(&["check", "swap", "--seed", "4", "--count", "20"]);
    assert_ne!(a.stdout, c.stdout);
    let m1 = run_kc(&["canonicalize", &data("square-quotient.json"), "--format", "md"]);
    let m2 = run_kc(&["canonicalize", &data("square-quotient.json"), "--format", "md"]);
    assert_eq!(m1, m2);
}

#[test]
fn outputs_read_back() {
    let dir = std::env::temp_dir().join(format!("kc-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let first = run_kc(&["canonicalize", &data("square-quotient.json")]);
    assert_eq!(first.code, 0);
    let path = dir.join("canonical.json");
    std::fs::write(&path, &first.stdout).unwrap();
    let again = run_kc(&["canonicalize", path.to_str().unwrap()]);
    assert_eq!(first.stdout, again.stdout);
    assert_eq!(json(&again)["terms"][0]["coeff"], "-1/2");
    let b = run_kc(&["boundary", path.to_str().unwrap()]);
    assert_eq!(json(&b)["terms"].as_array().unwrap().len(), 2);
    let bb_path = dir.join("boundary.json");
    std::fs::write(&bb_path, &b.stdout).unwrap();
    let bb = run_kc(&["boundary", bb_path.to_str().unwrap()]);
    assert_eq!(json(&bb)["terms"], serde_json::json!([]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cochain_commands() {
    let cover = data("cover-cochain.json");
    let cup = run_kc(&["cup", &cover, &cover]);
    assert_eq!(cup.code, 0);
    assert_eq!(json(&cup)["target"]["kind"], "torus");
    let dga = run_kc(&["dga-check", &cover, &cover, &cover]);
    assert_eq!(dga.code, 0);
    let v = json(&dga);
    assert_eq!(v["pass"], true);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["name"].as_str().unwrap().starts_with("Leibniz")));
    let pb = run_kc(&["pullback", &data("doubling.json"), &cover]);
    assert_eq!(json(&pb)["terms"][0]["coeff"], "1");
    let du = run_kc(&["duality", &cover, "--reverse"]);
    assert_eq!(json(&du)["terms"][0]["coeff"], "-1");
    let sing = run_kc(&["from-singular", &data("singular-triangle.json")]);
    assert_eq!(sing.code, 0);
    assert_eq!(json(&sing)["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn bordism_commands() {
    let p = run_kb(&["present", &data("points.json")]);
    assert_eq!(p.code, 0);
    assert_eq!(json(&p)["factors"], serde_json::json!(["Z"]));
    let q = run_kb(&["present", &data("points.json"), "--ring", "Q"]);
    assert_eq!(json(&q)["factors"], serde_json::json!(["Q"]));
    let kh = run_kb(&["to-kh", &data("circle.json")]);
    assert_eq!(kh.code, 0);
    let v = json(&kh);
    assert_eq!((v["cycle"].clone(), v["tag_independent"].clone()), (true.into(), true.into()));
    let s = run_kb(&["strata", &data("hexagon-strata.json")]);
    assert_eq!(s.code, 0);
    let v = json(&s);
    assert_eq!(v["shift"], -2);
    assert_eq!(v["signs"], serde_json::json!([1, -1]));
}

#[test]
fn every_suite_is_listed_in_help() {
    let r = run_kc(&["check", "--help"]);
    assert_eq!(r.code, 0);
    for s in corner_calculus::suites::SUITES {
        assert!(r.stdout.contains(s), "{s}");
    }
}
