use std::process::Command;

fn dualdeg(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dualdeg")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn degree_of_and2() {
    let (code, out) = dualdeg(&["degree", "--fn", "and", "--n", "2", "--eps", "1/3"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "2");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(dualdeg(&["markov", "--at", "zero", "--n", "4"]).0, 2);
    assert_eq!(dualdeg(&["degree", "--fn", "and", "--n", "2", "--eps", "0.33"]).0, 2);
    assert_eq!(dualdeg(&["trig", "--bogus"]).0, 2);
    assert_eq!(dualdeg(&["symdual", "--n", "10", "--t", "3", "--kind", "general"]).0, 2);
    assert_eq!(dualdeg(&["trig", "--prec", "16"]).0, 2);
}

#[test]
fn markov_report_in_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("m.json");
    let csv = dir.path().join("m.csv");
    let j = json.to_str().unwrap();
    let c = csv.to_str().unwrap();
    assert_eq!(dualdeg(&["markov", "--at", "one", "--n", "12", "--report", j]).0, 0);
    assert_eq!(dualdeg(&["markov", "--higher", "--n", "6", "--k", "3", "--report", c, "--format", "csv"]).0, 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let residual = v["checks"][0]["measured"].as_str().unwrap();
    assert!(residual.contains("0x") || residual == "0", "{residual}");
    assert_eq!(v["config"]["precision"], 256);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("name,paper_ref,pass,measured,expected,tolerance"));
    assert!(text.contains("markov.cramer"));
}

#[test]
fn low_precision_higher_certificate_is_refused() {
    assert_eq!(dualdeg(&["markov", "--higher", "--n", "30", "--k", "5", "--prec", "64"]).0, 2);
}

#[test]
fn witness_commands_pass() {
    assert_eq!(dualdeg(&["andor", "--M", "2", "--N", "2"]).0, 0);
    assert_eq!(dualdeg(&["symdual", "--n", "20", "--t", "10"]).0, 0);
    assert_eq!(dualdeg(&["symdual", "--n", "30", "--t", "1"]).0, 0);
    let (code, out) = dualdeg(&["dual", "--fn", "or", "--n", "3", "--d", "1", "--emit"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n=3\nd=1\n"), "{out}");
    assert_eq!(dualdeg(&["trig", "--nmax", "12"]).0, 0);
    assert_eq!(dualdeg(&["fn", "--fn", "thr", "--n", "5", "--t", "2"]).0, 0);
}
