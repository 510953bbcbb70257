use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_coxrep"))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coxrep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

const TRIANGLE: &str = r#"{
    "system": {"generators": ["a", "b", "c"], "default_bond": 3},
    "classification": {"chi": {"b-c": [2.0, 0.0]}}
}"#;

#[test]
fn affine_geometric_case() {
    let o = run(&["affine-an", "--n", "2", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(num(&v["det"][0]).abs() < 1e-12 && num(&v["det"][1]).abs() < 1e-12);
    assert_eq!(v["corank"], 1);
    let fixed = v["fixed_subspace"].as_array().unwrap();
    assert_eq!(fixed.len(), 1);
    let entries: Vec<f64> = fixed[0].as_array().unwrap().iter().map(|z| num(&z[0])).collect();
    assert_eq!(entries.len(), 3);
    for e in &entries {
        assert!((e - entries[0]).abs() < 1e-12 && e.abs() > 1e-6);
    }
    assert_eq!(v["det_formula"], serde_json::json!([0.0, 0.0]));
}

#[test]
fn affine_generic_case() {
    let o = run(&["affine-an", "--n", "3", "--x", "-1/4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["corank"], 0);
    assert!((num(&v["det"][0]) - num(&v["det_formula"][0])).abs() < 1e-14);
}

#[test]
fn cellcheck_passes_and_fails() {
    let o = run(&["cellcheck", "--m", "5", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["terms"], 10);
    assert_eq!(v["epsilon_value"], serde_json::json!([-10.0, 0.0]));
    assert_eq!(run(&["cellcheck", "--m", "5", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn isomorphism_exit_codes() {
    let p = temp_file("iso1.json", TRIANGLE);
    let q = temp_file("iso2.json", &TRIANGLE.replace("[2.0, 0.0]", "[3.0, 0.0]"));
    // a datum in a different gauge with the same character
    let r = temp_file(
        "iso3.json",
        r#"{"system": {"generators": ["a", "b", "c"], "default_bond": 3}, "datum": {"scalars": {"a-b": [0.5, 0.0]}}}"#,
    );
    let same = run(&["isom", p.to_str().unwrap(), p.to_str().unwrap()]);
    assert_eq!(same.status.code(), Some(0));
    let v = json(&same);
    assert_eq!(v["isomorphic"], true);
    assert_eq!(v["intertwiner"].as_array().unwrap().len(), 3);
    let diff = run(&["isom", p.to_str().unwrap(), q.to_str().unwrap()]);
    assert_eq!(diff.status.code(), Some(1));
    assert!(json(&diff)["reason"]["character_differs"].is_string());
    let gauge = run(&["isom", p.to_str().unwrap(), r.to_str().unwrap()]);
    assert_eq!(gauge.status.code(), Some(0));
    assert_eq!(json(&gauge)["verified"], true);
}

#[test]
fn input_errors() {
    let bad = temp_file("bad.json", r#"{"system": {"generators": ["a", "a"]}}"#);
    let o = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["analyze", "/nonexistent/coxrep.json"]).status.code(), Some(2));
    let unknown = temp_file("unknown.json", r#"{"system": {"generators": ["a"]}, "extra": 1}"#);
    assert_eq!(run(&["build", unknown.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["affine-an", "--n", "1", "--x", "2"]).status.code(), Some(2));
    assert_eq!(run(&["--tol", "0", "cellcheck", "--m", "3", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn form_outcomes() {
    let p = temp_file("form.json", TRIANGLE);
    let o = run(&["form", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["reason"]["character_value"].is_array());
    let unit = temp_file("form_unit.json", &TRIANGLE.replace("[2.0, 0.0]", "[0.6, 0.8]"));
    let o = run(&["form", unit.to_str().unwrap(), "--kind", "sesquilinear"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["solution_dim"], 1);
}

#[test]
fn verify_and_dual() {
    let p = temp_file("verify.json", TRIANGLE);
    let o = run(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let d = run(&["dual", p.to_str().unwrap()]);
    assert_eq!(d.status.code(), Some(0));
    let v = json(&d);
    assert_eq!(v["outcome"]["invertible"], true);
    assert_eq!(v["outcome"]["dual_classification"]["chi"]["b-c"], serde_json::json!([0.5, 0.0]));
}

#[test]
fn sweep_preserves_order() {
    let p = temp_file("sweep.json", TRIANGLE);
    let values: Vec<String> = (1..=40).map(|i| format!("{}", i as f64 / 8.0)).collect();
    let vf = temp_file("values.txt", &format!("# values\n{}\n", values.join("\n")));
    let o = run(&["sweep", p.to_str().unwrap(), "--chord", "b-c", "--values-file", vf.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("chi_re,chi_im,det_re,det_im,corank"));
    for (line, want) in lines.zip(&values) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[0].parse::<f64>().unwrap(), want.parse::<f64>().unwrap());
        let x: f64 = cols[0].parse().unwrap();
        // A~_2 with character x
        let det = (2.0 - x - 1.0 / x) / 8.0;
        assert!((cols[2].parse::<f64>().unwrap() - det).abs() < 1e-14);
        assert_eq!(cols[4], if x == 1.0 { "1" } else { "0" });
    }
    let missing = run(&["sweep", p.to_str().unwrap(), "--chord", "a-z", "--values-file", vf.to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn build_output_round_trips() {
    let p = temp_file("build.json", TRIANGLE);
    let o = run(&["build", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(num(&v["relation_residual"]) < 1e-12);
    let again = temp_file("build2.json", &serde_json::to_string(&v["datum"]).unwrap());
    let w = json(&run(&["build", again.to_str().unwrap()]));
    assert_eq!(v["datum"], w["datum"]);
    assert_eq!(v["representation"], w["representation"]);
}
