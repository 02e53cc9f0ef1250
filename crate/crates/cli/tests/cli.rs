use std::fs;
use std::process::{Command, Output};

fn hadamard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hadamard"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn generate_order_three_to_stdout() {
    let out = hadamard(&["generate", "-m", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "HM_3_1:[[[0,2],[1,1]],[[0,1],[1,1],[2,1]],[[1,1],[2,1],[4,1]]]$\n");
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("m=3: 1 matrices"), "{err}");
}

#[test]
fn dense_formats() {
    let out = hadamard(&["generate", "-m", "3", "--format", "dense01"]);
    assert_eq!(stdout(&out), "110\n101\n011\n");
    let out = hadamard(&["generate", "-m", "3", "--format", "densepm"]);
    assert_eq!(stdout(&out), "++++\n+--+\n+-+-\n++--\n");
}

#[test]
fn bad_order_is_rejected() {
    let out = hadamard(&["generate", "-m", "14"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("m=14 is incorrect size for Hadamard matrices"), "{err}");
}

#[test]
fn limit_stops_early() {
    let out = hadamard(&["generate", "-m", "11", "--limit", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("stopped early"));
}

#[test]
fn verify_generated_file_and_a_corrupted_one() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.txt");
    let out = hadamard(&["generate", "-m", "7", "-o", good.to_str().unwrap()]);
    assert!(out.status.success());

    let out = hadamard(&["verify", good.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("30/30 passed"));

    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "111\n101\n011\n").unwrap();
    let out = hadamard(&["verify", "--format", "dense01", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("junk.txt");
    fs::write(&path, "HM_3_1:[[[0,2],[1,1]]$\n").unwrap();
    let out = hadamard(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let gl = dir.path().join("m7.txt");
    let pm = dir.path().join("m7.pm");
    let back = dir.path().join("m7.back");
    assert!(hadamard(&["generate", "-m", "7", "-o", gl.to_str().unwrap()]).status.success());
    let out = hadamard(&[
        "convert", gl.to_str().unwrap(), "--from", "grouplist", "--to", "densepm", "-o",
        pm.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = hadamard(&[
        "convert", pm.to_str().unwrap(), "--from", "densepm", "--to", "grouplist", "-o",
        back.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(fs::read(&gl).unwrap(), fs::read(&back).unwrap());
}
