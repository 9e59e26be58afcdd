use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tensorrep"))
        .args(args)
        .env_remove("TENSORREP_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn model_file(json: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(json.as_bytes()).unwrap();
    f
}

#[test]
fn c6v_elements_one_per_line() {
    let o = run(&["pg", "elements", "C6v"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);
}

#[test]
fn verify_reports_stabilizer() {
    let o = run(&["st", "verify", "C4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("stabilizer = C4 (4 elements): PASS"));
}

#[test]
fn unknown_group_is_a_usage_error() {
    let o = run(&["pg", "elements", "C5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cayley_json_is_deterministic() {
    let a = stdout(&run(&["--format", "json", "pg", "table", "C4v"]));
    let b = stdout(&run(&["--format", "json", "pg", "table", "C4v"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["names"].as_array().unwrap().len(), 8);
}

#[test]
fn cayley_csv_has_header_and_rows() {
    let o = run(&["--format", "csv", "pg", "table", "C3v"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 7);
}

#[test]
fn zheng_check_passes_for_aligned_groups() {
    for (n, g) in [("2", "C2v"), ("3", "C3v"), ("4", "C4v"), ("6", "C6v")] {
        let o = run(&["st", "zheng", n, "--check", g]);
        assert_eq!(o.status.code(), Some(0), "{n} {g}: {}", stdout(&o));
    }
}

#[test]
fn isotropic_basis_counts() {
    let o = run(&["--format", "json", "iso", "basis", "--vec", "1", "--sym", "1", "--skew", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert_eq!(v[0]["text"], "tr(A1)");
}

#[test]
fn symmetrized_model_checks_clean() {
    let f = model_file(r#"{"group":"C4v","kind":"tensor","free":["1","I2","I3*I1"]}"#);
    let o = run(&["model", "check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("result: PASS"));
}

#[test]
fn unsymmetrized_model_fails_check() {
    let f = model_file(r#"{"group":"C4v","kind":"tensor","free":["1","I2","I3*I1"],"symmetrize":false}"#);
    let o = run(&["model", "check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn eval_and_stress() {
    let t = model_file(r#"{"group":"C4v","kind":"tensor","free":["1","I2","I3*I1"]}"#);
    let o = run(&["--format", "json", "model", "eval", t.path().to_str().unwrap(), "--C", "1,2,0.5"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // slot averages over r90: a1 = (I2 + I2*I1)/2, a2 = (I3*I1 + I3)/2
    assert_eq!(v["T"]["c11"], 4.25);
    assert_eq!(v["T"]["c12"], 0.5);
    assert_eq!(v["T"]["c22"], 8.5);

    let s = model_file(r#"{"group":"C4v","kind":"scalar","free":["I2*I2+I1"]}"#);
    let o = run(&["model", "stress", s.path().to_str().unwrap(), "--C", "-1,2,0.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let o = run(&["model", "stress", t.path().to_str().unwrap(), "--C", "1,2,0.5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bad_model_inputs_exit_2() {
    let arity = model_file(r#"{"group":"C4v","kind":"tensor","free":["1","I2"]}"#);
    let unknown = model_file(r#"{"group":"C4v","kind":"scalar","free":["I9"]}"#);
    let syntax = model_file(r#"{"group":"C4v","kind":"scalar","free":["I1 +"]}"#);
    let extra = model_file(r#"{"group":"C4v","kind":"scalar","free":["I1"],"bogus":1}"#);
    for f in [&arity, &unknown, &syntax, &extra] {
        let o = run(&["model", "check", f.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let o = run(&["model", "check", "/nonexistent/model.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rep_spec_json_is_deterministic() {
    let a = run(&["--format", "json", "rep", "spec", "C6v"]);
    let b = run(&["--format", "json", "rep", "spec", "C6v"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
