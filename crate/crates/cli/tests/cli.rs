use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_trirep"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    {
        let mut pipe = child.stdin.take().unwrap();
        if let Some(text) = stdin {
            pipe.write_all(text.as_bytes()).unwrap();
        }
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(args: &[&str]) -> String {
    let o = run(args, None);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn generated_algebra_checks() {
    for lambda in ["1", "3", "6"] {
        let alg = gen(&["gen", "sl2l", "--lambda", lambda]);
        let o = run(&["check", "-"], Some(&alg));
        assert_eq!(o.status.code(), Some(0));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["all_pass"], true);
    }
    let o = run(&["check", "-"], Some(&gen(&["gen", "sl2"])));
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn broken_algebra_fails_check() {
    let alg = gen(&["gen", "sl2l", "--lambda", "1"]);
    let mut v: Value = serde_json::from_str(&alg).unwrap();
    // Point [e, z1] at 2 z1 instead of z0.
    for b in v["brackets"].as_array_mut().unwrap() {
        if b[0] == 2 && b[1] == 4 {
            b[2] = serde_json::json!([[4, "2"]]);
        }
    }
    let o = run(&["check", "-"], Some(&v.to_string()));
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["axioms"]["jacobi"], false);
    assert!(report["axioms"]["jacobi_witness"].is_array());
}

#[test]
fn adjoint_verifies() {
    let rep = gen(&["gen", "adjoint", "--lambda", "2"]);
    let o = run(&["verify", "-"], Some(&rep));
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["report"]["faithful"], true);
}

#[test]
fn corrupted_entry_fails_verify_with_witness() {
    let rep = gen(&["gen", "family", "--lambda", "1", "--m", "1", "--n", "0", "--s", "0", "--bigN", "0"]);
    assert_eq!(run(&["verify", "-"], Some(&rep)).status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&rep).unwrap();
    v["images"]["z0"][1][0] = Value::String("3".into());
    let o = run(&["verify", "-"], Some(&v.to_string()));
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdicts"]["homomorphism"], false);
    let witnesses = report["report"]["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["kind"] == "basis_pair"));
}

#[test]
fn worked_family_module_reports_failure() {
    let rep = gen(&["gen", "family", "--lambda", "1", "--m", "2", "--n", "1", "--s", "1", "--bigN", "1"]);
    let o = run(&["verify", "-"], Some(&rep));
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdicts"]["homomorphism"], false);
    assert_eq!(report["header"][0], "v_i in the z-action formulas is read as u_i");
    let literal = run(&["verify", "--paper-literal", "-"], Some(&rep));
    assert_eq!(literal.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&literal)).unwrap();
    assert_eq!(report["mode"], "paper_literal");
    assert_eq!(report["verdicts"]["irreducible_components"], false);
}

#[test]
fn family_scalars_parse() {
    let rep = gen(&["gen", "family", "--lambda", "1", "--m", "2", "--n", "1", "--s", "0", "--bigN", "0", "--a", "-1/2"]);
    let v: Value = serde_json::from_str(&rep).unwrap();
    assert_eq!(v["family"]["params"]["a"][0], "-1/2");
    let o = run(&["gen", "family", "--lambda", "1", "--m", "2", "--n", "1", "--s", "0", "--bigN", "0", "--a", "x"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["gen", "family", "--lambda", "1", "--m", "2", "--n", "1", "--s", "0", "--bigN", "0"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_lists_six_tuples() {
    let out = gen(&["enumerate", "--lambda", "1", "--max-m", "2", "--max-n", "2"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[0], "m=0 n=1 s=1 N=0");
    assert_eq!(lines[5], "m=2 n=1 s=1 N=1");
    assert!(gen(&["enumerate", "--lambda", "1", "--max-m", "0", "--max-n", "0"]).is_empty());
}

#[test]
fn classify_outputs() {
    let out = gen(&["classify", "--lambda", "1", "--max-n", "2", "--max-m", "3", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 12);
    assert!(cells.iter().all(|c| c["dim"] == c["cg"]));
    let table = gen(&["classify", "--lambda", "1", "--max-n", "2", "--max-m", "3", "--table"]);
    assert!(table.lines().next().unwrap().trim_start().starts_with("n"));
    assert_eq!(table.lines().count(), 13);
}

#[test]
fn decompose_map() {
    let map = r#"{"dims":[1,1],"matrix":[["1","0"],["2","3"]]}"#;
    let o = run(&["decompose", "-"], Some(map));
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["components"][0]["map"]["matrix"], serde_json::json!([["1", "0"], ["0", "3"]]));
    assert_eq!(v["components"][1]["map"]["matrix"], serde_json::json!([["0", "0"], ["2", "0"]]));
    let leak = r#"{"dims":[1,1],"matrix":[["1","5"],["2","3"]]}"#;
    let o = run(&["decompose", "-"], Some(leak));
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["violation"], serde_json::json!([1, 0]));
}

#[test]
fn malformed_input_exits_two() {
    assert_eq!(run(&["check", "-"], Some("{not json")).status.code(), Some(2));
    assert_eq!(run(&["verify", "-"], Some("[]")).status.code(), Some(2));
    assert_eq!(run(&["decompose", "-"], Some(r#"{"dims":[2],"matrix":[["1"]]}"#)).status.code(), Some(2));
    assert_eq!(run(&["check", "/nonexistent/algebra.json"], None).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(run(&["gen", "sl2l", "--lambda", "0"], None).status.code(), Some(2));
    let adj = gen(&["gen", "adjoint"]);
    assert_eq!(run(&["verify", "--paper-literal", "-"], Some(&adj)).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let args = ["gen", "family", "--lambda", "2", "--m", "3", "--n", "1", "--s", "0", "--bigN", "0", "--a", "1"];
    let first = gen(&args);
    assert_eq!(first, gen(&args));
    let a = run(&["verify", "-"], Some(&first));
    let b = run(&["verify", "-"], Some(&first));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn output_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("trirep-cli-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let o = run(&["gen", "sl2", "-o", p], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(run(&["check", p], None).status.code(), Some(0));
    std::fs::remove_file(&path).unwrap();
}
