use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn rowspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rowspace"))
        .args(args)
        .env_remove("ROWSPACE_ORACLE_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn jsonl(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn family_emits_graph6() {
    let o = rowspace(&["family", "--name", "complete", "--size", "4", "--emit-graph6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "C~");
}

#[test]
fn family_description() {
    let o = rowspace(&["family", "--name", "petersen"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 10);
    assert_eq!(v["rank"], 10);
    assert_eq!(v["diameter"], 2);
    assert_eq!(v["witness"]["strategy"], "disjoint-neighborhood");
}

#[test]
fn family_rejects_bad_size() {
    let o = rowspace(&["family", "--name", "cycle", "--size", "2"]);
    assert!(!o.status.success());
    let o = rowspace(&["family", "--name", "no-such-graph"]);
    assert!(!o.status.success());
}

#[test]
fn verify_with_one_malformed_line() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    let out = dir.path().join("out.jsonl");
    fs::write(&input, ">>graph6<<A_\nC~\nC~~\nE???\n").unwrap();
    let o = rowspace(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--jobs",
        "2",
        "--oracle-limit",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(1), "an error record fails the run");
    let recs = jsonl(&fs::read_to_string(&out).unwrap());
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[0]["status"], "ok");
    assert_eq!(recs[0]["witness"], "11");
    assert_eq!(recs[0]["certificate"], serde_json::json!(["1/1", "1/1"]));
    assert_eq!(recs[1]["status"], "ok");
    assert_eq!(recs[1]["strategy"], "complete-all-ones");
    assert_eq!(recs[2]["status"], "error");
    assert_eq!(recs[3]["status"], "skipped");
    assert_eq!(recs[3]["diameter"], "infinite");
}

#[test]
fn verify_clean_run_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_rowspace"))
        .args(["verify", "--strategies", "disjoint-neighborhood,oracle"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"EhEG\nDhc\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let recs = jsonl(&stdout(&o));
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r["status"] == "ok"));
}

#[test]
fn oracle_limit_from_environment() {
    // Complement of C9: only the oracle answers it.
    let g6 = "HUzvvx}";
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    fs::write(&input, format!("{g6}\n")).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rowspace"))
        .args(["verify", "--input", input.to_str().unwrap()])
        .env("ROWSPACE_ORACLE_LIMIT", "8")
        .output()
        .unwrap();
    assert!(o.status.success());
    let recs = jsonl(&stdout(&o));
    assert_eq!(recs[0]["status"], "skipped-too-large", "{recs:?}");
}

#[test]
fn size_bound_records() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    let out = dir.path().join("out.jsonl");
    let petersen = stdout(&rowspace(&["family", "--name", "petersen", "--emit-graph6"]));
    let wheel = stdout(&rowspace(&["family", "--name", "wheel", "--size", "9", "--emit-graph6"]));
    fs::write(&input, format!("Dhc\n{}{}", petersen, wheel)).unwrap();
    let o = rowspace(&["size-bound", "--input", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let recs = jsonl(&fs::read_to_string(&out).unwrap());
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["order"], 5);
    assert_eq!(recs[0]["equality"], true);
    assert_eq!(recs[1]["size"], 15);
    assert_eq!(recs[1]["equality"], true);
    assert_eq!(recs[2]["has_dominating"], true);
    assert_eq!(recs[2]["applicable"], false);
}

#[test]
fn exhaustive_report() {
    let o = rowspace(&["exhaustive", "--n", "4", "--jobs", "1"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["graphs_checked"], 38);
    assert_eq!(v["failures"], serde_json::json!([]));
    let o = rowspace(&["exhaustive", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
}
