use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn liec(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liec"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn bowtie(dir: &Path) {
    let o = liec(dir, &["gen", "bowtie", "--out", "bowtie.txt"]);
    assert!(o.status.success());
}

#[test]
fn solve_bowtie_uses_four_colors_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    bowtie(dir.path());
    let o = liec(dir.path(), &["solve", "bowtie.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "bowtie.txt: 4 colors");
    let o = liec(dir.path(), &["verify", "bowtie.txt", "bowtie.col"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "VALID\n");
}

#[test]
fn monochromatic_bowtie_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    bowtie(dir.path());
    let edges = fs::read_to_string(dir.path().join("bowtie.txt")).unwrap();
    let bad: String = edges.lines().map(|l| format!("{l} 1\n")).collect();
    fs::write(dir.path().join("bad.col"), bad).unwrap();
    let o = liec(dir.path(), &["verify", "bowtie.txt", "bad.col"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("INVALID"));
    let rest: Vec<&str> = lines.collect();
    assert!(!rest.is_empty());
    for l in rest {
        assert_eq!(l.split_whitespace().count(), 3, "{l}");
        assert!(l.ends_with(" 1"));
    }
}

#[test]
fn classify_and_solve_triangle() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("k3.txt"), "0 1\n1 2\n2 0\n").unwrap();
    let o = liec(dir.path(), &["classify", "k3.txt"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "OddCycle\n");
    let o = liec(dir.path(), &["solve", "k3.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("OddCycle"));
    assert!(!dir.path().join("k3.col").exists());
}

#[test]
fn classify_prints_triangle_family_witness() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("t.txt"), "0 1\n1 2\n2 0\n0 3\n3 4\n").unwrap();
    let o = liec(dir.path(), &["classify", "t.txt"]);
    assert_eq!(stdout(&o), "TFamily\ntriangle 0 1 2\npendant 0 3 4\n");
}

#[test]
fn outputs_need_force_to_overwrite() {
    let dir = tempfile::tempdir().unwrap();
    bowtie(dir.path());
    let o = liec(dir.path(), &["gen", "bowtie", "--out", "bowtie.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let o = liec(dir.path(), &["gen", "bowtie", "--out", "bowtie.txt", "--force"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(liec(dir.path(), &["solve", "bowtie.txt"]).status.code(), Some(0));
    assert_eq!(liec(dir.path(), &["solve", "bowtie.txt"]).status.code(), Some(2));
    let o = liec(dir.path(), &["solve", "bowtie.txt", "--force"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn bad_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.txt"), "0 1\n1 x\n").unwrap();
    let o = liec(dir.path(), &["classify", "bad.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    fs::write(dir.path().join("k4.txt"), "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    assert_eq!(liec(dir.path(), &["solve", "k4.txt"]).status.code(), Some(2));
}

#[test]
fn exact_and_budget() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c4.txt"), "0 1\n1 2\n2 3\n3 0\n").unwrap();
    assert_eq!(stdout(&liec(dir.path(), &["exact", "c4.txt"])), "2\n");
    fs::write(dir.path().join("c5.txt"), "0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    assert_eq!(stdout(&liec(dir.path(), &["exact", "c5.txt"])), "NONE\n");
    let o = liec(dir.path(), &["exact", "c4.txt", "--max-edges", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parallel_solves_and_disconnected_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let mut names = Vec::new();
    for seed in 0..6 {
        let name = format!("c{seed}.txt");
        let s = seed.to_string();
        let o = liec(
            dir.path(),
            &["gen", "cactus", "--n", "30", "--cycles", "4", "--seed", &s, "--out", &name],
        );
        assert!(o.status.success());
        names.push(name);
    }
    fs::write(dir.path().join("two.txt"), "0 1\n1 2\n2 3\n3 0\n10 11\n11 12\n").unwrap();
    names.push("two.txt".into());
    let mut args = vec!["solve", "--jobs", "3"];
    args.extend(names.iter().map(String::as_str));
    let o = liec(dir.path(), &args);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), names.len());
    for (line, name) in out.lines().zip(&names) {
        assert!(line.starts_with(name.as_str()), "{line}");
        let col = name.replace(".txt", ".col");
        let v = liec(dir.path(), &["verify", name, &col]);
        assert_eq!(stdout(&v), "VALID\n");
    }
    let o = liec(dir.path(), &["classify", "two.txt"]);
    assert_eq!(stdout(&o), "component 0: Colorable\ncomponent 1: Colorable\n");
}

#[test]
fn generators_are_deterministic_and_dot_is_colored() {
    let dir = tempfile::tempdir().unwrap();
    let a = liec(dir.path(), &["gen", "tree", "--n", "25", "--seed", "9"]);
    let b = liec(dir.path(), &["gen", "tree", "--n", "25", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 24);
    bowtie(dir.path());
    liec(dir.path(), &["solve", "bowtie.txt"]);
    let o = liec(dir.path(), &["export-dot", "bowtie.txt", "--coloring", "bowtie.col"]);
    let dot = stdout(&o);
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches("[color=").count(), 13);
}
