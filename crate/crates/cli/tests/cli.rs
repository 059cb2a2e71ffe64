use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_twoqubit"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn single_series_prefix() {
    let o = run(&["series", "expand", "--grading", "1", "--max-degree", "4"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["coefficients"], serde_json::json!(["1", "0", "3", "2", "10"]));
}

#[test]
fn single_series_csv() {
    let o = run(&["series", "expand", "--grading", "1", "--max-degree", "6", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text, "degree,coefficient\n0,1\n1,0\n2,3\n3,2\n4,10\n5,7\n6,29\n");
}

#[test]
fn trigraded_json_lists_every_multidegree() {
    let o = run(&["series", "expand", "--grading", "3", "--max-degree", "6"]);
    let v = stdout_json(&o);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 84);
    let find = |d: [u32; 3]| terms.iter().find(|t| t["degrees"] == serde_json::json!(d)).unwrap()["coefficient"].clone();
    assert_eq!(find([2, 2, 2]), "4");
    assert_eq!(find([0, 0, 6]), "3");
}

#[test]
fn molien_dimension() {
    let o = run(&["molien", "dim", "1", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1\n");
    let o = run(&["molien", "dim", "0", "2", "4"]);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "4\n");
}

#[test]
fn molien_cross_check_summary() {
    let o = run(&["molien", "cross-check", "--max-degree", "4"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 36);
    let summary: Value = serde_json::from_str(lines[35]).unwrap();
    assert_eq!(summary["mismatches"], 0);
    assert_eq!(summary["lie_checked"], 35);
    assert_eq!(summary["degree_sums"], serde_json::json!(["1", "0", "3", "2", "10"]));
    let first: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(first["degrees"], serde_json::json!([0, 0, 0]));
    assert_eq!(first["molien"], "1");
}

#[test]
fn classify_bell_fixture() {
    let o = run(&["classify", fixture("bell.json").to_str().unwrap()]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["entangled"], true);
    assert_eq!(v["on_boundary_M"], true);
    assert_eq!(v["tag"], "InteriorEntangled");
    assert!((v["det_pt"].as_f64().unwrap() + 0.0625).abs() < 1e-15);
}

#[test]
fn classify_coordinate_fixture() {
    let o = run(&["classify", fixture("product.json").to_str().unwrap()]);
    let v = stdout_json(&o);
    assert_eq!(v["tag"], "BoundaryBoth");
    assert_eq!(v["entangled"], false);
}

#[test]
fn invariants_have_seventeen_digits() {
    let o = run(&["invariants", fixture("bell.json").to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout.clone()).unwrap();
    assert!(text.contains("\"I1\":-1.5625000000000000e-2"), "{text}");
    let v = stdout_json(&o);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 10);
    assert!((v["I2"].as_f64().unwrap() - 0.1875).abs() < 1e-16);
    assert!((v["det_pt"].as_f64().unwrap() + 0.0625).abs() < 1e-16);
}

#[test]
fn state_from_stdin() {
    let mut child = bin()
        .args(["invariants", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(std::fs::read(fixture("product.json")).unwrap().as_slice())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert!((v["I4"].as_f64().unwrap() - 0.25).abs() < 1e-16);
}

#[test]
fn boundary_point_of_bell_is_werner_third() {
    let o = run(&["boundary-point", fixture("bell.json").to_str().unwrap()]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert!((v["lambda"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["state"]["dim"], 4);
    let o = run(&["boundary-point", fixture("bell.json").to_str().unwrap(), "--emit", "coordinates"]);
    let v = stdout_json(&o);
    assert!((v["state"]["beta"][0][0].as_f64().unwrap() - 0.25 / 3.0).abs() < 1e-12);
}

#[test]
fn audit_output_is_independent_of_thread_count() {
    let args = ["audit-smoothness", "--samples", "40", "--seed", "3"];
    let one = bin().args(["--threads", "1"]).args(args).output().unwrap();
    let four = bin().args(["--threads", "4"]).args(args).output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    for (i, line) in text.lines().enumerate() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["index"], i);
        assert_eq!(v["zero_count"], 1);
        for key in ["tag", "det", "det_pt"] {
            assert!(v.get(key).is_some());
        }
    }
}

#[test]
fn det_formula_verification() {
    let o = run(&["verify", "det-formula", "--samples", "500", "--seed", "1"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["samples"], 600);
    assert_eq!(v["passed"], true);
}

#[test]
fn failed_check_exits_one() {
    let o = run(&["verify", "det-formula", "--samples", "10", "--tol=-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["series", "expand", "--grading", "2", "--max-degree", "3"]).status.code(), Some(2));
    assert_eq!(run(&["molien", "dim", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "/nonexistent/state.json"]).status.code(), Some(2));
    assert_eq!(run(&["classify", fixture("not_hermitian.json").to_str().unwrap()]).status.code(), Some(2));
    // a separable endpoint cannot bracket the boundary
    assert_eq!(run(&["boundary-point", fixture("product.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let args = ["verify", "det-formula", "--samples", "300", "--seed", "9"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn verify_all_table_names_every_criterion() {
    let o = run(&["verify", "all"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(o.status.success(), "{text}");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|l| l.contains("PASS")));
    assert!(lines[3].contains("Molien"));
    let o = run(&["verify", "all", "--format", "json"]);
    let v = stdout_json(&o);
    assert_eq!(v.as_array().unwrap().len(), 10);
    assert!(v[0].get("seconds").is_none());
}
