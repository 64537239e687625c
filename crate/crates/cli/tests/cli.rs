use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use janet_core::run::SolveReport;
use janet_core::RunStats;

fn janet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_janet")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn gen_goldens() {
    let out = janet(&["gen", "cyclic", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "vars: x1 x2\norder: degrevlex\nx1 + x2\nx1*x2 - 1\n");
    let out = janet(&["gen", "cyclic", "3"]);
    assert_eq!(stdout(&out), "vars: x1 x2 x3\norder: degrevlex\nx1 + x2 + x3\nx1*x2 + x1*x3 + x2*x3\nx1*x2*x3 - 1\n");
    let out = janet(&["gen", "noon", "2"]);
    assert_eq!(stdout(&out), "vars: x1 x2\norder: degrevlex\n10*x1*x2^2 - 11*x1 + 10\n10*x1^2*x2 - 11*x2 + 10\n");
}

#[test]
fn gen_to_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    assert!(janet(&["gen", "katsura", "4", "-o", a.to_str().unwrap()]).status.success());
    assert!(janet(&["gen", "katsura", "4", "--output", b.to_str().unwrap()]).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn gen_rejects_bad_parameters() {
    for args in [&["gen", "cyclic", "1"][..], &["gen", "hcyclic", "4"], &["gen", "eco", "x"]] {
        let out = janet(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn solve_hand_example() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "mono.txt", "vars: x y\nx^2\ny\n");
    let out = janet(&["solve", &file, "--output", "janet"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "y\nx*y\nx^2\n");
    let out = janet(&["solve", &file, "--output", "groebner"]);
    assert_eq!(stdout(&out), "y\nx^2\n");
}

#[test]
fn solve_all_strategies_verified_with_csv_stats() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cyclic4.txt");
    assert!(janet(&["gen", "cyclic", "4", "-o", file.to_str().unwrap()]).status.success());
    let out = janet(&["solve", file.to_str().unwrap(), "--strategy", "all", "--verify", "--stats", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let basis = stdout(&out);
    assert_eq!(basis.lines().count(), 7);
    assert!(!basis.contains("strategy") && !basis.contains(','));
    let err = stderr(&out);
    let lines: Vec<&str> = err.lines().collect();
    assert_eq!(lines[0], SolveReport::stats_csv_header());
    assert_eq!(lines.len(), 5);
    for (line, name) in lines[1..].iter().zip(["baseline", "I", "II-high", "II-low"]) {
        assert!(line.starts_with(&format!("cyclic4,{name},completed,")), "{line}");
    }
}

#[test]
fn solve_json_stats_cover_every_counter() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "hand.txt", "vars: x y\nx^2 - y\ny^2 - 1\n");
    let out = janet(&["solve", &file, "--stats", "json", "--verify", "--strategy", "baseline"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "y^2 - 1\nx^2 - y\nx*y^2 - x\n");
    let json: serde_json::Value = serde_json::from_str(&stderr(&out)).unwrap();
    let record = &json[0];
    for field in RunStats::CSV_HEADER.split(',') {
        assert!(record.get(field).is_some(), "{field} missing");
    }
    assert_eq!(record["certified"], true);
    assert_eq!(record["basis_size"], 3);
}

#[test]
fn solve_order_override() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "s.txt", "vars: x y z\norder: degrevlex\nx*z - y^2\n");
    let out = janet(&["solve", &file]);
    assert_eq!(stdout(&out), "y^2 - x*z\n");
    let out = janet(&["solve", &file, "--order", "deglex"]);
    assert_eq!(stdout(&out), "x*z - y^2\n");
}

#[test]
fn parse_errors_exit_one_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("vars: x\nz + 1\n", "line 2, column 1", "unknown variable"),
        ("vars: x\nx^-2\n", "line 2, column 3", "malformed exponent"),
        ("vars: x\n# nothing\n", "empty system", "empty system"),
        ("vars: x\nvars: y\nx\n", "line 2", "duplicate `vars:`"),
    ];
    for (i, (text, position, message)) in cases.iter().enumerate() {
        let file = write(dir.path(), &format!("bad{i}.txt"), text);
        let out = janet(&["solve", &file]);
        assert_eq!(out.status.code(), Some(1), "{text:?}");
        let err = stderr(&out);
        assert!(err.contains(position) && err.contains(message), "{text:?}: {err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "ok.txt", "vars: x\nx\n");
    for args in [
        &["solve"][..],
        &["solve", &file, "--strategy", "III"],
        &["solve", &file, "--output", "everything"],
        &["solve", &file, "--order", "lex"],
        &["solve", &file, "--stats", "xml"],
        &["solve", &file, "--timeout", "-1"],
        &["solve", "/nonexistent/file.txt"],
        &["frobnicate"],
    ] {
        assert_eq!(janet(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(janet(&["--help"]).status.code(), Some(0));
}

#[test]
fn timeout_exits_three_with_partial_stats() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cyclic6.txt");
    assert!(janet(&["gen", "cyclic", "6", "-o", file.to_str().unwrap()]).status.success());
    let out =
        janet(&["solve", file.to_str().unwrap(), "--strategy", "baseline", "--timeout", "0.05", "--stats", "csv"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let err = stderr(&out);
    assert!(err.contains("cyclic6,baseline,timeout,"), "{err}");
    assert!(err.contains("timed out"));
}

#[test]
fn bench_runs_jobs_in_parallel_and_prints_csv() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "sys.txt", "vars: x y\nx^2 - y\ny^2 - 1\n");
    let spec = write(dir.path(), "bench.txt", "verify: true\ncyclic 3\nnoon-2 I II-low\nfile sys.txt baseline\n");
    let out = janet(&["bench", &spec, "--jobs", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], SolveReport::stats_csv_header());
    assert_eq!(lines.len(), 1 + 4 + 2 + 1);
    assert!(lines[1].starts_with("cyclic-3,baseline,completed,"));
    assert!(lines[5].starts_with("noon-2,I,"));
    assert!(lines[7].contains("sys.txt,baseline,completed,"));

    let bad = write(dir.path(), "bad.txt", "cyclic\n");
    assert_eq!(janet(&["bench", &bad]).status.code(), Some(1));
    assert_eq!(janet(&["bench", &spec, "--jobs", "0"]).status.code(), Some(1));
}
