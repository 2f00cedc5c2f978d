use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn jacpair(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacpair")).args(args).output().expect("binary runs")
}

fn jacpair_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_jacpair"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn result(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "jacpair/1");
    v["result"].clone()
}

#[test]
fn verify_rg_example() {
    let r = result(&jacpair(&["verify-rg", "--a", "5", "--l", "1", "--delta", "2"]));
    assert_eq!(r["verified"], true);
    assert_eq!(r["i"], 2);
    assert_eq!(r["G_text"], "-1/3*x^6*y^3 - 1/2*x^4*y^2");
}

#[test]
fn corner_b2_csv_rows() {
    let out = jacpair(&["corner-b2", "--a-max", "8", "--l-max", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "a,l,delta,c,k1,verified");
    // a = 8 qualifies with Δ = 3: (8 − 6) divides (3 − 1)
    assert_eq!(&rows[1..], ["5,1,2,3,1,true", "7,1,3,4,2,true", "8,1,3,5,1,true"]);
}

#[test]
fn corner_b2_modes_agree() {
    let a = jacpair(&["corner-b2", "--a-max", "30", "--l-max", "3"]);
    let b = jacpair(&["corner-b2", "--a-max", "30", "--l-max", "3", "--sequential"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(result(&a)["all_verified"], true);
}

#[test]
fn shape_im_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shape.json");
    std::fs::write(&path, r#"{"corners": [{"roots": 4, "b": 3, "k": 1, "l": 4}]}"#).unwrap();
    let r = result(&jacpair(&["shape-im", "--spec", path.to_str().unwrap()]));
    assert_eq!(r["i_major"], "3*m");
}

#[test]
fn inum_and_stdin() {
    let r = result(&jacpair(&["inum", "y^2 - x^3", "y - x"]));
    assert_eq!(r["i"], "3");
    let r = result(&jacpair_stdin(&["inum", "-", "-"], "y^2 - x^3\n\ny - x\n"));
    assert_eq!(r["i"], "3");
}

#[test]
fn field_selection() {
    let out = jacpair(&["inum", "y^2 + i", "y"]);
    assert_eq!(out.status.code(), Some(1));
    let r = result(&jacpair(&["--field", "qi", "inum", "y^2 + i*x", "y - 1"]));
    assert_eq!(r["i"], "1");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tower.txt");
    std::fs::write(&path, "z^2 - 2\n").unwrap();
    let field = format!("tower:{}", path.display());
    let r = result(&jacpair(&["--field", &field, "inum", "y^2 - 2*x^2", "y - g1"]));
    assert_eq!(r["i"], "2");
    // y − g1·x is a component of y² − 2x²
    assert_eq!(jacpair(&["--field", &field, "inum", "y^2 - 2*x^2", "y - g1*x"]).status.code(), Some(1));
}

#[test]
fn exit_codes() {
    assert_eq!(jacpair(&["inum", "y^(1/2)", "y"]).status.code(), Some(1));
    assert_eq!(jacpair(&["theta", "--a", "6", "--b", "2", "--c", "2", "--d", "0", "--l", "1"]).status.code(), Some(2));
    assert_eq!(jacpair(&["verify-rg", "--a", "6", "--l", "1", "--delta", "2"]).status.code(), Some(2));
    assert_eq!(jacpair(&["piroots", "y^2 + x^-1", "--xi", "none"]).status.code(), Some(3));
    assert!(jacpair(&["piroots", "y^2 + x^-1", "--xi", "auto"]).status.success());
}

#[test]
fn piroots_tree_and_enumeration() {
    let r = result(&jacpair(&["piroots", "y^2 - x^3"]));
    assert_eq!(r["tree"]["lambda"], "3");
    let r = result(&jacpair(&["piroots", "y^2 - 1 + x^-1", "--with", "y - 1 + x^-1"]));
    assert_eq!(r["enumeration"]["xi"], "-1");
}

#[test]
fn reports_are_byte_stable() {
    for args in [["imajor", "y^3 - x*y + x^2 + 1", "y^2 - x"], ["iminor", "y^3 - x*y + x^2 + 1", "y^2 - x"]] {
        let a = jacpair(&args);
        let b = jacpair(&args);
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}
