use std::process::{Command, Output};

use qlink_cli::report::{InvariantReport, Route, Value};

fn qlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlink")).args(args).output().expect("binary runs")
}

fn json_report(args: &[&str]) -> InvariantReport {
    let out = qlink(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report schema")
}

fn value<'a>(r: &'a InvariantReport, name: &str, route: Route) -> &'a Value {
    &r.invariants.iter().find(|i| i.name == name && i.route == route).unwrap_or_else(|| panic!("no {name}")).value
}

#[test]
fn whitehead_link_report() {
    let r = json_report(&["invariants", "whitehead-link", "--format", "json"]);
    assert_eq!(value(&r, "lk", Route::Diagram), &Value::Int(0));
    assert_eq!(value(&r, "beta_tilde", Route::Polynomial), &Value::Int(1));
    assert_eq!(value(&r, "beta_tilde", Route::Trace), &Value::Int(1));
    assert_eq!(value(&r, "mu(1122)", Route::MuBar), &Value::Residue { value: 1, modulus: 0 });
    assert_eq!(value(&r, "congruence_check", Route::MuBar), &Value::Bool(true));
}

#[test]
fn json_round_trips_and_is_byte_identical() {
    let a = qlink(&["invariants", "mazur", "--format", "json"]);
    let b = qlink(&["invariants", "mazur", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let r: InvariantReport = serde_json::from_slice(&a.stdout).unwrap();
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again.as_bytes(), a.stdout.as_slice());
}

#[test]
fn parametrized_entry_via_flag() {
    let r = json_report(&["invariants", "H_n", "--n", "2", "--format", "json"]);
    assert_eq!(r.input, "H_n:2");
    assert_eq!(value(&r, "lk", Route::Diagram), &Value::Int(2));
    assert!(matches!(value(&r, "beta", Route::Polynomial), Value::Unavailable { .. }));
}

#[test]
fn several_inputs_keep_their_order() {
    let out = qlink(&["invariants", "trefoil", "hopf", "W", "--format", "json"]);
    let rs: Vec<InvariantReport> = serde_json::from_slice(&out.stdout).unwrap();
    let names: Vec<&str> = rs.iter().map(|r| r.input.as_str()).collect();
    assert_eq!(names, ["trefoil", "hopf", "W"]);
}

#[test]
fn diagram_files() {
    let dir = std::env::temp_dir().join(format!("qlink-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("hopf.pd");
    std::fs::write(&good, "PD[2; X(1,3,2,4), X(3,1,4,2)]").unwrap();
    let r = json_report(&["invariants", good.to_str().unwrap(), "--format", "json"]);
    assert_eq!(value(&r, "lk", Route::Diagram).to_string().trim_start_matches('-'), "1");
    let bad = dir.join("bad.pd");
    std::fs::write(&bad, "PD[2; X(1,3,2,4),\nX(3,1,4]").unwrap();
    let out = qlink(&["invariants", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn unknown_inputs_exit_2() {
    assert_eq!(qlink(&["invariants", "no-such-link"]).status.code(), Some(2));
    assert_eq!(qlink(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qlink(&["trace", "hopf"]).status.code(), Some(2));
    assert_eq!(qlink(&["--format", "yaml", "catalog"]).status.code(), Some(2));
}

#[test]
fn trace_reports() {
    let r = json_report(&["trace", "jin-W#rhoW", "--format", "json"]);
    assert_eq!(value(&r, "sigma_tilde", Route::Trace), &Value::Text("(-t^-1 + t, t^-1 - t)".into()));
    assert_eq!(value(&r, "kirk_sigma", Route::Trace), &Value::Text("(0, 0)".into()));
    let dir = std::env::temp_dir().join(format!("qlink-trace-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("w.jsonl");
    std::fs::write(
        &f,
        "{\"kind\":\"closed-link\",\"start\":\"whitehead-link\",\"end\":\"unlink:2\"}\n{\"component\":0,\"sign\":-1,\"lobes\":{\"1\":[-1,1]}}\n",
    )
    .unwrap();
    let r = json_report(&["trace", f.to_str().unwrap(), "--format", "json"]);
    assert_eq!(value(&r, "beta_tilde", Route::Trace), &Value::Int(1));
    assert_eq!(value(&r, "eta", Route::Trace), &Value::Text("-t^-1 + 2 - t".into()));
    std::fs::write(&f, "{\"kind\":\"closed-link\",\"start\":\"a\",\"end\":\"b\"}\n{\"component\":0}\n").unwrap();
    let out = qlink(&["trace", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suites() {
    for suite in ["appendix", "kernel", "dualpath"] {
        let out = qlink(&["verify", suite, "--cases", "50"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    }
    let out = qlink(&["verify", "--suite", "skein", "--seed", "9", "--cases", "30", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["seed"], 9);
    assert_eq!(v[0]["checks"][0]["cases"], 30);
}

#[test]
fn catalog_listing_and_export() {
    let a = qlink(&["catalog"]);
    assert!(a.status.success());
    let names: Vec<String> = String::from_utf8(a.stdout).unwrap().lines().map(String::from).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(names.iter().any(|n| n == "fake-mazur"));
    let out = qlink(&["catalog", "hopf", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["kind"], "link");
    assert_eq!(v["recorded"]["lk"], 1);
    let out = qlink(&["catalog", "sigma-W_n", "--n", "3"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("6*t"));
}
