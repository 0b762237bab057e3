use std::fs;
use std::process::{Command, Output};

fn emlindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_emlindex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_p1_passes() {
    let o = emlindex(&["run", "--builder", "p1", "--A", "3", "--task", "verify", "--window", "-5..8"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verify: PASS against p1Character(A=3) on [-5, 8]"));
}

#[test]
fn pushed_one_two_values() {
    let o = emlindex(&["run", "--builder", "pushed", "--weights", "1,2", "--task", "multiplicity", "--window", "0..10"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("values: 1,1,2,2,3,3,4,4,5,5,6"));
}

#[test]
fn em_three_squared() {
    let o = emlindex(&["run", "--builder", "p1", "--A", "3", "--task", "em", "--poly", "0,0,1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("em: PASS  LHS=14  RHS=14  stabilization k=4"), "{out}");
    assert!(out.contains("k=0: spline 44/3 delta 0"));
    assert!(out.contains("k=2: spline 0 delta -2/3"));
}

#[test]
fn failing_verification_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    fs::write(
        &cfg,
        r#"{"datum": {"builder": "p1", "A": 3}, "tasks": ["verify"], "oracle": {"kind": "p1Character", "a": 2}}"#,
    )
    .unwrap();
    let o = emlindex(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("first mismatch at 3: engine 1 oracle 0"));
}

#[test]
fn config_errors_exit_two_with_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.json");
    fs::write(&cfg, r#"{"datum": {"builder": "p1", "A": 3}, "tasks": ["verify"], "window": [5]}"#).unwrap();
    let o = emlindex(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("window"));
}

#[test]
fn json_output_is_deterministic_and_written() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let csv = dir.path().join("csv");
    let args = [
        "run", "--builder", "pushed", "--weights", "2,3", "--task", "splines,multiplicity,verify,csv", "--window", "0..12",
        "--json", "--out", out.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ];
    let a = emlindex(&args);
    let b = emlindex(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(fs::read(&out).unwrap(), a.stdout);
    let report: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["multiplicity"]["entries"][12]["value"], "3");
    assert_eq!(report["verify"]["passed"], true);
    let first = fs::read_to_string(csv.join("vertex0_m0.csv")).unwrap();
    assert!(first.starts_with("xi,value,value_exact\n"));
}

#[test]
fn datum_round_trip_through_files() {
    let o = emlindex(&["datum", "--builder", "p1", "--A", "3"]);
    assert!(o.status.success());
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p1.json");
    fs::write(&path, &o.stdout).unwrap();
    let again = emlindex(&["datum", "--datum", path.to_str().unwrap()]);
    assert_eq!(again.stdout, o.stdout);

    let mut doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    doc["vertices"][0]["contributions"][0]["factors"][1]["kind"] = "denomTwisted".into();
    fs::write(&path, doc.to_string()).unwrap();
    let bad = emlindex(&["run", "--datum", path.to_str().unwrap(), "--task", "multiplicity"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("vertices[0].contributions[0].factors[1]"));
}

#[test]
fn spinor_builder_and_negative_eps() {
    let o = emlindex(&["run", "--builder", "p1-spinor", "--A", "2", "--task", "multiplicity,verify", "--window", "-3..5", "--eps", "-"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("values: 0,0,-1,-1,0,1,1,0,0"));
}
