use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn nonrep(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonrep")).args(args).current_dir(dir).output().expect("spawn nonrep")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const K4: &str = "4\n0: 1 2 3\n1: 2 0 3\n2: 0 1 3\n3: 0 2 1\nouter: 0 2 1\n";

#[test]
fn k4_colour_then_verify() {
    let dir = TempDir::new().unwrap();
    write(&dir, "k4.pg", K4);
    let o = nonrep(&["colour", "planar", "k4.pg", "-o", "k4.col"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("colours 4"), "{}", stderr(&o));
    let v = nonrep(&["verify", "nonrep", "k4.pg", "k4.col"], dir.path());
    assert_eq!(v.status.code(), Some(0), "{}{}", stdout(&v), stderr(&v));
}

#[test]
fn repetitive_path_exits_one_with_witness() {
    let dir = TempDir::new().unwrap();
    write(&dir, "p4.g", "4 3\n0 1\n1 2\n2 3\n");
    write(&dir, "p4.col", "4 2\n0 1\n1 2\n2 1\n3 2\n");
    let o = nonrep(&["verify", "nonrep", "p4.g", "p4.col"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("repetitive path: 0 1 2 3"), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let o = nonrep(&["pi", "exact", "missing.g"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.g"));
    write(&dir, "bad.g", "3 2\n0 1\nx 2\n");
    let o = nonrep(&["pi", "exact", "bad.g"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let o = nonrep(&["colour", "planar"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = TempDir::new().unwrap();
    for run in ["a", "b"] {
        let pg = format!("t{run}.pg");
        let col = format!("t{run}.col");
        assert!(nonrep(&["gen", "triangulation", "--n", "60", "--seed", "7", "-o", &pg], dir.path()).status.success());
        assert!(nonrep(&["colour", "planar", &pg, "-o", &col], dir.path()).status.success());
        assert!(nonrep(&["colour", "local", &pg, "--k", "2", "--seed", "3", "-o", &format!("l{run}.col")], dir.path())
            .status
            .success());
    }
    let read = |n: &str| std::fs::read(dir.path().join(n)).unwrap();
    assert_eq!(read("ta.pg"), read("tb.pg"));
    assert_eq!(read("ta.col"), read("tb.col"));
    assert_eq!(read("la.col"), read("lb.col"));
    let v = nonrep(&["verify", "nonrep", "ta.pg", "ta.col"], dir.path());
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn pi_and_words_and_separator() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c5.g", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let o = nonrep(&["pi", "exact", "c5.g"], dir.path());
    assert_eq!(stdout(&o).trim(), "pi = 4");
    let o = nonrep(&["words", "walk", "--n", "64", "-o", "w.seq"], dir.path());
    assert!(o.status.success());
    assert_eq!(nonrep(&["words", "check", "w.seq"], dir.path()).status.code(), Some(0));
    write(&dir, "sq.seq", "4 2\n0 1 0 1\n");
    assert_eq!(nonrep(&["words", "check", "sq.seq"], dir.path()).status.code(), Some(1));
    let o = nonrep(&["words", "thue", "--n", "10"], dir.path());
    assert!(stdout(&o).starts_with("10 3\n"));
    write(&dir, "k4.pg", K4);
    let o = nonrep(&["sep", "lollipop", "k4.pg", "--audit"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("boundary:"));
}

#[test]
fn tree_and_lowerbound_generation() {
    let dir = TempDir::new().unwrap();
    assert!(nonrep(&["gen", "tree", "--n", "50", "--seed", "2", "--format", "g", "-o", "t.g"], dir.path())
        .status
        .success());
    let o = nonrep(&["colour", "tree", "t.g", "-o", "t.col"], dir.path());
    assert!(o.status.success());
    assert_eq!(nonrep(&["verify", "nonrep", "t.g", "t.col"], dir.path()).status.code(), Some(0));
    write(&dir, "c5.g", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    let o = nonrep(&["gen", "lowerbound", "--h", "c5.g"], dir.path());
    assert!(stdout(&o).starts_with("134 "), "{}", stdout(&o));
}
