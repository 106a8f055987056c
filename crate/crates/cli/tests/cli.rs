use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn reglab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reglab"))
        .args(args)
        .env_remove("REGLAB_JOBS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = reglab(&all);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn row(v: &Value, n: u64) -> &Value {
    v.as_array()
        .unwrap()
        .iter()
        .find(|r| r["n"] == n)
        .expect("row present")
}

#[test]
fn example1_rows() {
    let v = json(&["example1", "--m", "1", "--n-max", "3"]);
    assert_eq!(row(&v, 3)["reg_tor"], 6);
    assert_eq!(row(&v, 3)["indeg_tor"], 3);
    let v = json(&["example1", "--m", "2", "--n-max", "1"]);
    assert_eq!(row(&v, 1)["reg_ext"], -1);
    assert_eq!(row(&v, 1)["indeg_ext"], -2);
}

#[test]
fn example1_in_positive_characteristic() {
    let out = reglab(&["example1", "--m", "2", "--n-max", "4", "--char", "3"]);
    assert!(out.status.success());
}

#[test]
fn zero_n_max_is_an_error() {
    let out = reglab(&["example1", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("n-max"));
}

#[test]
fn example2_rows_and_ratios() {
    let v = json(&["example2", "--n-max", "15"]);
    let rows = &v["rows"];
    assert_eq!(row(rows, 1)["reg_tor"], 3);
    assert_eq!(row(rows, 6)["reg_tor"], 13);
    assert_eq!(row(rows, 15)["reg_tor"], 45);
    assert_eq!(v["ratio_stats"]["max"], "3");
}

#[test]
fn coefficient_ideal_rows() {
    let v = json(&["coeff-ideals", "--n-max", "8"]);
    assert_eq!(row(&v, 5)["generators"], 9);
    assert_eq!(row(&v, 8)["regularity"], 21);
    assert_eq!(row(&v, 1)["regularity"], 0);
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn reg_of_residue_field() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "k.json",
        r#"{"ring": {"characteristic": 0, "variables": ["U", "V", "W"]},
            "module": {"row_twists": [0], "column_twists": [1, 1, 1], "entries": [["U", "V", "W"]]},
            "kind": "cokernel"}"#,
    );
    let v = json(&["reg", &p]);
    assert_eq!(v["regularity"], 0);
    assert_eq!(v["certified"], true);
}

#[test]
fn inhomogeneous_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "bad.json",
        r#"{"ring": {"characteristic": 0, "variables": ["U", "V"]},
            "module": {"row_twists": [0], "column_twists": [1, 1], "entries": [["U", "U + V^2"]]},
            "kind": "cokernel"}"#,
    );
    let out = reglab(&["reg", &p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("homogeneous"));
}

#[test]
fn quotient_ring_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("d.json");
    let p = p.to_str().unwrap();
    let out = reglab(&["export", "--setup", "1", "--map", "d", "--n", "2", "-o", p]);
    assert!(out.status.success());
    let out = reglab(&["reg", p]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported ring"));
}

#[test]
fn exported_presentation_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let a = a.to_str().unwrap();
    let out = reglab(&[
        "export", "--setup", "2", "--map", "phi", "--n", "4", "-o", a,
    ]);
    assert!(out.status.success());
    let first = json(&["reg", a]);
    assert_eq!(first["regularity"], 9);

    let text = std::fs::read_to_string(a).unwrap();
    let b = write(dir.path(), "b.json", &text);
    assert_eq!(json(&["reg", &b]), first);
    let out = reglab(&["export", "--setup", "2", "--map", "phi", "--n", "4"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn uncertified_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let a = a.to_str().unwrap();
    reglab(&[
        "export", "--setup", "2", "--map", "phi", "--n", "4", "-o", a,
    ]);
    let out = reglab(&["reg", a, "--degree-cap", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--degree-cap"));
}

#[test]
fn asymptotic_fits() {
    let v = json(&[
        "asymptotics",
        "--setup",
        "1",
        "--homology",
        "ext",
        "--m",
        "1",
        "--n-max",
        "12",
    ]);
    for fit in v["fits"].as_array().unwrap() {
        assert_eq!(fit["slope"], -2);
        assert_eq!(fit["weight_check"], true);
    }
    let v = json(&[
        "asymptotics",
        "--setup",
        "1",
        "--homology",
        "tor",
        "--m",
        "3",
        "--n-max",
        "12",
    ]);
    for fit in v["fits"].as_array().unwrap() {
        assert_eq!(fit["slope"], 8);
        assert_eq!(fit["weight_check"], false);
    }
    let out = reglab(&["asymptotics", "--n-max", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_and_table_agree_on_cells() {
    let out = reglab(&[
        "identities",
        "--setup",
        "2",
        "--n-max",
        "4",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,anticommute,d_squared_zero"));
    assert_eq!(lines.count(), 4);
    let out = reglab(&[
        "closed-forms",
        "--setup",
        "2",
        "--n-max",
        "3",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("n,reg_tor,indeg_tor,"));
    assert!(text.lines().nth(3).unwrap().starts_with("3,9,"));
}

#[test]
fn job_count_does_not_change_output() {
    let args = ["example2", "--n-max", "8", "--format", "json"];
    let one = reglab(&[&args[..], &["--jobs", "1"]].concat()).stdout;
    let env = Command::new(env!("CARGO_BIN_EXE_reglab"))
        .args(args)
        .env("REGLAB_JOBS", "3")
        .output()
        .unwrap()
        .stdout;
    assert_eq!(one, env);
}
