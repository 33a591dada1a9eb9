use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_slidecube"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const L_TROMINO: &str = "2 3\n0 0\n1 0\n0 1\n";
const I_TROMINO: &str = "2 3\n0 0\n0 1\n0 2\n";

#[test]
fn plan_then_validate_with_expectation() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.cfg", L_TROMINO);
    let b = put(&dir, "b.cfg", I_TROMINO);
    let t = dir.path().join("ab.trace");
    let out = run(&["plan", "--from", s(&a), "--to", s(&b), "--out", s(&t)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let out = run(&[
        "validate",
        "--config",
        s(&a),
        "--trace",
        s(&t),
        "--expect",
        s(&b),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out), "2 3\n0 0\n0 1\n0 2\n");
    // wrong expectation
    let out = run(&[
        "validate",
        "--config",
        s(&a),
        "--trace",
        s(&t),
        "--expect",
        s(&a),
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn corrupted_trace_reports_the_move() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.cfg", "2 2\n0 0\n1 0\n");
    // second move rotates about a pivot that is no longer there
    let t = put(&dir, "bad.trace", "2 2\nR 0,0 1,0 1,1\nR 1,0 0,0 0,1\n");
    let out = run(&["validate", "--config", s(&a), "--trace", s(&t)]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("move 1"), "{}", stderr(&out));
}

#[test]
fn disconnecting_trace_is_rejected() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.cfg", "2 3\n0 0\n1 0\n1 1\n");
    // geometrically fine, but the corner module was holding the other two together
    let t = put(&dir, "t.trace", "2 1\nR 1,0 0,0 0,-1\n");
    let out = run(&["validate", "--config", s(&a), "--trace", s(&t)]);
    assert_eq!(code(&out), 1);
    assert!(
        stderr(&out).contains("move 0 (disconnected)"),
        "{}",
        stderr(&out)
    );
    let t = put(&dir, "u.trace", "2 1\nR 1,1 1,0 2,0\n");
    let out = run(&["validate", "--config", s(&a), "--trace", s(&t)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn mismatched_sizes_are_infeasible() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.cfg", L_TROMINO);
    let b = put(&dir, "b.cfg", "2 2\n0 0\n1 0\n");
    let t = dir.path().join("x.trace");
    let out = run(&["plan", "--from", s(&a), "--to", s(&b), "--out", s(&t)]);
    assert_eq!(code(&out), 3);
    assert!(!t.exists());
}

#[test]
fn lone_module_cannot_relocate() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.cfg", "3 1\n0 0 0\n");
    let b = put(&dir, "b.cfg", "3 1\n1 0 0\n");
    let t = dir.path().join("x.trace");
    assert_eq!(
        code(&run(&[
            "plan",
            "--from",
            s(&a),
            "--to",
            s(&b),
            "--out",
            s(&t)
        ])),
        3
    );
    assert_eq!(
        code(&run(&[
            "plan",
            "--from",
            s(&a),
            "--to",
            s(&a),
            "--out",
            s(&t)
        ])),
        0
    );
    assert_eq!(fs::read_to_string(&t).unwrap(), "3 0\n");
}

#[test]
fn parse_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let bad = put(&dir, "bad.cfg", "2 2\n0 0\n0 zero\n");
    let out = run(&["analyze", "--in", s(&bad)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 3"));
    let missing = dir.path().join("nope.cfg");
    assert_eq!(code(&run(&["analyze", "--in", s(&missing)])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let a = put(&dir, "a.cfg", L_TROMINO);
    let t = put(&dir, "t.trace", "2 1\nQ 0,0\n");
    assert_eq!(
        code(&run(&["validate", "--config", s(&a), "--trace", s(&t)])),
        2
    );
}

#[test]
fn canonicalize_writes_a_replayable_trace() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.cfg", L_TROMINO);
    let t = dir.path().join("c.trace");
    let out = run(&["canonicalize", "--in", s(&a), "--out", s(&t)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("anchor: 1,0"));
    let chain = put(&dir, "chain.cfg", "2 3\n1 0\n2 0\n3 0\n");
    let out = run(&[
        "validate",
        "--config",
        s(&a),
        "--trace",
        s(&t),
        "--expect",
        s(&chain),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.cfg");
    let b = dir.path().join("b.cfg");
    for p in [&a, &b] {
        let out = run(&[
            "gen",
            "--n",
            "25",
            "--d",
            "3",
            "--seed",
            "99",
            "--style",
            "tree",
            "--out",
            s(p),
        ]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("3 25\n"));
    assert_eq!(
        code(&run(&[
            "gen",
            "--n",
            "0",
            "--d",
            "2",
            "--seed",
            "1",
            "--out",
            s(&a)
        ])),
        3
    );
}

#[test]
fn analyze_report_lines() {
    let dir = TempDir::new().unwrap();
    let ring = put(
        &dir,
        "ring.cfg",
        "2 8\n0 0\n1 0\n2 0\n0 1\n2 1\n0 2\n1 2\n2 2\n",
    );
    let out = run(&["analyze", "--in", s(&ring)]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "n: 8\nd: 2\nconnected: true\nboundary_modules: 8\nboundary_faces: 12\nholes: 1\n\
         articulation_modules: 0\narticulation: \nnonarticulate: 8\n"
    );
}

#[test]
fn oracle_output() {
    let dir = TempDir::new().unwrap();
    let a = put(&dir, "a.cfg", L_TROMINO);
    let b = put(&dir, "b.cfg", I_TROMINO);
    let out = run(&["oracle", "--from", s(&a), "--to", s(&b)]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(
        text.starts_with("reachable: true\nmin_moves: 1\n"),
        "{text}"
    );
    let out = run(&[
        "oracle",
        "--from",
        s(&a),
        "--to",
        s(&b),
        "--max-states",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("reachable: unknown"));
    let c = put(&dir, "c.cfg", "2 2\n0 0\n0 1\n");
    assert_eq!(code(&run(&["oracle", "--from", s(&a), "--to", s(&c)])), 3);
}

#[test]
fn stats_csv() {
    let out = run(&[
        "stats", "--d", "2", "--n", "4,8", "--trials", "2", "--seed", "3",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,trial,moves,elapsed_ms"));
    let keys: Vec<String> = lines
        .map(|l| l.split(',').take(2).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(keys, vec!["4,0", "4,1", "8,0", "8,1"]);
}
