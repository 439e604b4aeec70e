use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use taupart::partition::FailureWitness;

const C5: &str = "Dhc";
const P4: &str = "Ch";
const K4: &str = "C~";
const C6: &str = "EhEG";

fn taupart(args: &[&str], stdin: &str) -> Output {
    taupart_env(args, stdin, &[])
}

fn taupart_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_taupart"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("TAUPART_MAX_N");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_basic_invariants() {
    let out = taupart(&["analyze"], &format!("{C5}\n{P4}\n"));
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!((recs[0]["n"].as_u64(), recs[0]["m"].as_u64(), recs[0]["tau"].as_u64()), (Some(5), Some(5), Some(5)));
    assert_eq!(recs[0]["two_connected"], true);
    assert_eq!(recs[1]["tau"], 4);
    assert_eq!(recs[1]["two_connected"], false);
}

#[test]
fn malformed_lines_are_recorded_and_skipped() {
    let out = taupart(&["analyze"], &format!("{C5}\nD?\n{P4}\n"));
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[1]["line"], 2);
    assert!(recs[1]["error"].as_str().unwrap().contains("byte 2"));

    let out = taupart(&["--fail-fast", "analyze"], &format!("{C5}\nD?\n{P4}\n"));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(lines(&out).len(), 2);
}

#[test]
fn partition_all_pairs_on_a_cycle() {
    let out = taupart(&["partition", "--all-pairs"], C6);
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs.len(), 5);
    for (i, r) in recs.iter().enumerate() {
        assert_eq!(r["a"], i + 1);
        assert_eq!(r["method"], "base-cycle");
    }
}

#[test]
fn partition_of_k4() {
    let out = taupart(&["partition", "--a", "2", "--b", "2"], K4);
    assert_eq!(out.status.code(), Some(0));
    let rec = &lines(&out)[0];
    assert!(rec["tauA"].as_u64().unwrap() <= 2 && rec["tauB"].as_u64().unwrap() <= 2);
}

#[test]
fn bad_target_states_tau() {
    let out = taupart(&["partition", "--a", "2", "--b", "2"], C6);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("τ=6"));
}

#[test]
fn partition_dot_output() {
    let out = taupart(&["partition", "--a", "2", "--b", "3", "--dot"], C5);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("graph"));
}

#[test]
fn detour_colouring_of_c5() {
    let out = taupart(&["color", "--mode", "detour", "--n", "2"], C5);
    assert_eq!(out.status.code(), Some(0));
    let rec = &lines(&out)[0];
    assert!(rec["colors_used"].as_u64().unwrap() <= 3);
    assert_eq!(rec["verified"], true);
    assert_eq!(rec["bound"], 3);
}

#[test]
fn star_colouring_of_p4() {
    let out = taupart(&["color", "--mode", "star"], P4);
    assert_eq!(out.status.code(), Some(0));
    let rec = &lines(&out)[0];
    let used = rec["colors_used"].as_u64().unwrap();
    assert!((3..=4).contains(&used));
    assert_eq!(rec["property"], "star");
}

#[test]
fn zero_order_bound_is_a_usage_error() {
    let out = taupart(&["color", "--mode", "detour", "--n", "0"], C5);
    assert_eq!(out.status.code(), Some(2));
    let out = taupart(&["color", "--mode", "detour"], C5);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_round_trip_and_tampering() {
    let certs = taupart(&["partition", "--all-pairs"], &format!("{K4}\n{C6}\n"));
    let colours = taupart(&["color", "--mode", "star"], &format!("{K4}\n{C6}\n"));
    let input = format!("{}{}", stdout(&certs), stdout(&colours));
    let out = taupart(&["verify"], &input);
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out).iter().all(|r| r["ok"] == true));

    let mut cert: Value = lines(&taupart(&["partition", "--a", "2", "--b", "2"], K4))[0].clone();
    let v = cert["A"].as_array_mut().unwrap().pop().unwrap();
    cert["B"].as_array_mut().unwrap().push(v);
    let out = taupart(&["verify"], &cert.to_string());
    assert_eq!(out.status.code(), Some(3));
    let rec = &lines(&out)[0];
    assert_eq!(rec["ok"], false);
    assert!(rec["reason"].as_str().unwrap().contains("bound b violated"));

    let mut wrong: Value = lines(&taupart(&["partition", "--a", "2", "--b", "2"], K4))[0].clone();
    wrong["graph6"] = Value::from("Bw");
    let out = taupart(&["verify"], &wrong.to_string());
    assert_eq!(out.status.code(), Some(3));
    assert!(lines(&out)[0]["reason"].as_str().unwrap().contains("vertex-range mismatch"));

    let out = taupart(&["verify"], "{\"graph6\": 3}");
    assert_eq!(out.status.code(), Some(3));
    assert!(lines(&out)[0]["reason"].as_str().unwrap().starts_with("schema"));
}

#[test]
fn hunt_small_connected_graphs() {
    let out = taupart(&["hunt", "--enumerate", "6", "--deterministic"], "");
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    let summary = recs.last().unwrap();
    assert_eq!(summary["kind"], "summary");
    assert_eq!(summary["counterexamples"], 0);
    assert_eq!(summary["graphs"], 143);
}

#[test]
fn hunt_random_graphs_with_witness_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("witnesses.jsonl");
    let out = taupart(
        &["hunt", "--random", "12", "--seed", "7", "--count", "100", "--witness-out", path.to_str().unwrap()],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    let summary = lines(&out).pop().unwrap();
    assert_eq!(summary["counterexamples"], 0);
    assert_eq!(summary["graphs"], 100);
    assert!(summary["outcomes"].get("fallback").is_some() || summary["outcomes"].get("constructed").is_some());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count() as u64, summary["witnesses"].as_u64().unwrap());
    for line in text.lines().take(50) {
        let w: FailureWitness = serde_json::from_str(line).unwrap();
        assert!(w.reproduces().unwrap());
    }
}

#[test]
fn hunt_on_empty_input() {
    let out = taupart(&["hunt"], "");
    assert_eq!(out.status.code(), Some(0));
    let summary = lines(&out).pop().unwrap();
    assert_eq!(summary["graphs"], 0);
}

#[test]
fn deterministic_runs_are_byte_identical() {
    let args = ["--deterministic", "hunt", "--random", "9", "--seed", "3", "--count", "30"];
    let a = taupart(&args, "");
    let b = taupart(&["--threads", "1", "--deterministic", "hunt", "--random", "9", "--seed", "3", "--count", "30"], "");
    assert_eq!(a.stdout, b.stdout);
    assert!(!stdout(&a).contains("micros"));
}

#[test]
fn bounds_on_small_graphs() {
    let out = taupart(&["bounds", "--enumerate", "5"], "");
    assert_eq!(out.status.code(), Some(0));
    let summary = lines(&out).pop().unwrap();
    assert_eq!(summary["counterexamples"], 0);
    assert_eq!(summary["outcomes"]["within-bounds"], 31);
}

#[test]
fn ears_are_valid() {
    let out = taupart(&["ears"], &format!("{K4}\n{C6}\n"));
    assert_eq!(out.status.code(), Some(0));
    for r in lines(&out) {
        assert_eq!(r["valid"], true);
        assert_eq!(r["reconstructs"], true);
    }
    let out = taupart(&["ears"], P4);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generate_enumerations() {
    let out = taupart(&["generate", "--enumerate", "4", "--two-connected"], "");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
    let out = taupart(&["generate", "--random", "8", "--count", "5", "--seed", "1"], "");
    assert_eq!(stdout(&out).lines().count(), 5);
}

#[test]
fn capacity_limits() {
    let out = taupart_env(&["analyze"], C5, &[("TAUPART_MAX_N", "30")]);
    assert_eq!(out.status.code(), Some(2));
    let p30 = "]hCGGC@?G?_@?@??_?G?@??C??G??G??C??@???G???_??@???@????_???G???@????C????G";
    let out = taupart(&["analyze"], p30);
    assert_eq!(out.status.code(), Some(4));
    let out = taupart_env(&["hunt", "--deterministic"], &format!("{C5}\n{K4}\n"), &[("TAUPART_MAX_N", "4")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).pop().unwrap()["outcomes"]["capacity"], 1);
}

#[test]
fn table_format() {
    let out = taupart(&["--format", "table", "analyze"], C5);
    let text = stdout(&out);
    let header = text.lines().next().unwrap();
    assert!(header.contains("tau") && header.contains("graph6"));
    assert!(text.lines().nth(1).unwrap().contains(C5));
}
