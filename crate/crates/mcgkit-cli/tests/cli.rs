//! End-to-end tests against the compiled binary: exit codes, output
//! formats, and determinism of the JSON stream.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mcgkit"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../mcgkit/fixtures/scripts")
        .join(name)
}

#[test]
fn expand_prints_the_symbol_expansion() {
    let out = run(&["expand", "--symbol", "s", "--genus", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "b1 a1 a1 b1\n");
}

#[test]
fn expand_rejects_unknown_symbols_as_usage_errors() {
    let out = run(&["expand", "--symbol", "nope", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn verify_streams_json_lines_and_exits_zero() {
    let out = run(&["verify", "--suite", "thm2", "--genus", "2", "--rep", "both"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect();
    let summary = lines.last().expect("summary line");
    assert_eq!(summary["summary"], true);
    assert_eq!(summary["suite"], "thm2");
    assert_eq!(summary["unexpected"], 0);
    // One sp and one pi1 result per relator, sp first, ids ascending.
    let results = &lines[..lines.len() - 1];
    assert_eq!(results.len() % 2, 0);
    for pair in results.chunks(2) {
        assert_eq!(pair[0]["id"], pair[1]["id"]);
        assert_eq!(pair[0]["rep"], "sp");
        assert_eq!(pair[1]["rep"], "pi1");
    }
}

#[test]
fn verify_output_is_deterministic_apart_from_timing() {
    let strip = |out: &Output| -> Vec<serde_json::Value> {
        stdout(out)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                if let Some(obj) = v.as_object_mut() {
                    obj.remove("elapsed");
                }
                v
            })
            .collect()
    };
    let args = [
        "verify", "--suite", "thm1", "--genus", "3", "--rep", "both", "--jobs", "3",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn expected_failures_inside_a_suite_keep_exit_zero() {
    // The closed-surface commutator fails on the fundamental group by
    // design; the suite marks it expected, so the run still succeeds.
    let out = run(&["verify", "--suite", "thm3", "--genus", "2", "--rep", "both"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("\"status\":\"fails\""));
    let out = run(&["verify", "--suite", "negative", "--genus", "2", "--rep", "both"]);
    assert!(out.status.success(), "{}", stderr(&out));
}

#[test]
fn verify_json_flag_writes_the_same_lines_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = run(&[
        "verify",
        "--suite",
        "lemma4",
        "--genus",
        "2",
        "--rep",
        "pi1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file, stdout(&out));
}

#[test]
fn verify_usage_errors_exit_two() {
    let out = run(&["verify", "--suite", "nope", "--genus", "2", "--rep", "both"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown suite"));
    let out = run(&["verify", "--suite", "thm2", "--genus", "3", "--rep", "both"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not defined at genus"));
    let out = run(&["verify", "--suite", "thm2", "--genus", "0", "--rep", "both"]);
    assert_eq!(out.status.code(), Some(2));
    // Bad or missing flags are caught by the argument parser, same code.
    let out = run(&["verify", "--suite", "thm2", "--genus", "2", "--rep", "zz"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--suite", "thm2", "--genus", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn eval_prints_images_or_a_matrix() {
    let out = run(&["eval", "--word", "a1 a1'", "--genus", "1", "--rep", "sp"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "1 0\n0 1\n");
    let out = run(&["eval", "--word", "a1 a1'", "--genus", "1", "--rep", "pi1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x1 -> x1\ny1 -> y1\n");
    let out = run(&["eval", "--word", "zz", "--genus", "2", "--rep", "sp"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn farey_reduce_emits_a_certificate_and_optionally_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = run(&[
        "farey",
        "reduce",
        "--path",
        "1/0 0/1 1/1 1/0",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let moves = v["moves"].as_array().unwrap();
    assert_eq!(moves.len(), 2);
    assert_eq!(moves[0]["kind"], "triangle-cut");
    assert_eq!(moves[1]["kind"], "backtrack-cancel");
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file.trim(), stdout(&out).trim());

    let out = run(&["farey", "reduce", "--path", "1/0 0/1"]);
    assert_eq!(out.status.code(), Some(2), "open path is a usage error");
    let out = run(&["farey", "reduce", "--path", "1/0 2/4 1/0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn farey_connect_prints_a_path() {
    let out = run(&["farey", "connect", "--from", "1/0", "--to", "3/2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1/0 1/1 3/2\n");
    let out = run(&["farey", "connect", "--from", "1/0", "--to", "1/0"]);
    assert_eq!(stdout(&out), "1/0\n");
}

#[test]
fn rewrite_search_output_replays_cleanly() {
    let out = run(&[
        "rewrite", "search", "--lhs", "(a1 b1) * a1", "--rhs", "b1", "--genus", "2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let script = stdout(&out);
    assert!(script.starts_with("start: "));
    assert!(script.contains("end: b1"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("found.txt");
    std::fs::write(&path, &script).unwrap();
    let out = run(&["rewrite", "replay", "--script", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).trim().ends_with("b1"));
}

#[test]
fn rewrite_search_inconclusive_exits_one() {
    let out = run(&[
        "rewrite", "search", "--lhs", "a1", "--rhs", "a2", "--genus", "2",
        "--max-steps", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("inconclusive"));
}

#[test]
fn rewrite_replay_runs_shipped_scripts() {
    for name in ["l4iv.txt", "a6.txt", "j1.txt", "j2.txt", "thirty_a.txt", "thirty_b.txt"] {
        let path = fixture(name);
        let out = run(&["rewrite", "replay", "--script", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}: {}", stderr(&out));
    }
}

#[test]
fn rewrite_replay_reports_end_mismatch_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "start: a1 b1 a1\nstep: braid(a1,b1) @ 0 fwd\nend: a1 b1 a1\n")
        .unwrap();
    let out = run(&["rewrite", "replay", "--script", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["rewrite", "replay", "--script", "/no/such/file"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_export_round_trips_through_the_parser() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("thm1.txt");
    let out = run(&[
        "catalog", "export", "--name", "thm1", "--genus", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let p = mcgkit::catalog::parse_presentation(&text).unwrap();
    assert_eq!(p.name, "thm1");
    assert_eq!(p.genus, 3);
    assert!(!p.relators.is_empty());

    // The disk-with-holes presentation exports at twice the genus.
    let dh = dir.path().join("dh.txt");
    let out = run(&[
        "catalog", "export", "--name", "disk_holes", "--genus", "3", "--out",
        dh.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let p = mcgkit::catalog::parse_presentation(&std::fs::read_to_string(&dh).unwrap()).unwrap();
    assert_eq!(p.name, "disk_holes");
    assert_eq!(p.genus, 6);

    let out = run(&["catalog", "export", "--name", "nope", "--genus", "3", "--out",
        path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}
