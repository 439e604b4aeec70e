//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if
//! any criterion fails.

use std::io::Write;
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use serde_json::Value;
use taupart::detour::{detour_order, dfs_detour_order};
use taupart::ear::{ear_decompose, validate_ears};
use taupart::enumerate::{connected_graphs_up_to, two_connected_graphs_up_to};
use taupart::generate::{random_2connected, random_gnp};
use taupart::multiway::{detour_coloring, exact_detour_chromatic};
use taupart::partition::FailureWitness;
use taupart::starcolor::{exact_acyclic_chromatic, exact_star_chromatic, star_coloring, verify_star_coloring};
use taupart::Graph;

const AC1_LIMIT: Duration = Duration::from_secs(120);
const AC3_LIMIT: Duration = Duration::from_secs(60);
const AC5_LIMIT: Duration = Duration::from_secs(300);
const AC6_LIMIT: Duration = Duration::from_secs(600);
const AC3_RANDOM_GRAPHS: usize = 1000;
const AC4_RANDOM_GRAPHS: usize = 500;

struct Run {
    code: Option<i32>,
    stdout: String,
}

fn taupart(args: &[&str], stdin: &str) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_taupart"))
        .args(args)
        .env_remove("TAUPART_MAX_N")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    Run { code: out.status.code(), stdout: String::from_utf8_lossy(&out.stdout).into_owned() }
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).expect("JSON line")).collect()
}

/// PASS/FAIL plus a detail string.
type Verdict = (bool, String);

fn ac1() -> Verdict {
    let start = Instant::now();
    let run = taupart(&["--threads", "1", "--deterministic", "hunt", "--enumerate", "6"], "");
    let elapsed = start.elapsed();
    let summary = json_lines(&run.stdout).pop().unwrap_or_default();
    let cx = summary["counterexamples"].as_u64();
    let ok = run.code == Some(0) && cx == Some(0) && summary["graphs"] == 143 && elapsed < AC1_LIMIT;
    (
        ok,
        format!(
            "graphs={} records={} counterexamples={:?} outcomes={} time={:.2}s limit={}s",
            summary["graphs"],
            summary["records"],
            cx,
            summary["outcomes"],
            elapsed.as_secs_f64(),
            AC1_LIMIT.as_secs()
        ),
    )
}

fn ac2() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let wpath = dir.path().join("witnesses.jsonl");
    let run = taupart(
        &["--deterministic", "hunt", "--enumerate", "6", "--two-connected", "--witness-out", wpath.to_str().unwrap()],
        "",
    );
    let mut recs = json_lines(&run.stdout);
    let summary = recs.pop().unwrap_or_default();
    let mut problems = Vec::new();
    let (mut constructed, mut fallback) = (0, 0);
    for r in &recs {
        match r["outcome"].as_str().unwrap_or("") {
            "constructed" | "base-cycle" => constructed += 1,
            "fallback" => {
                fallback += 1;
                if r["witnesses_replayed"] != true {
                    problems.push(format!("line {} fallback without replaying witness", r["line"]));
                }
            }
            other => problems.push(format!("line {} outcome {other}", r["line"])),
        }
    }
    let witnesses = std::fs::read_to_string(&wpath).unwrap_or_default();
    let mut replayed = 0;
    for line in witnesses.lines() {
        let w: FailureWitness = serde_json::from_str(line).unwrap();
        let first = w.replay().unwrap();
        let again = w.replay().unwrap();
        if first == again && w.reproduces().unwrap() {
            replayed += 1;
        } else {
            problems.push(format!("witness does not replay: {line}"));
        }
    }

    let corpus = taupart(&["generate", "--enumerate", "6", "--two-connected"], "").stdout;
    let certs = taupart(&["partition", "--all-pairs"], &corpus);
    let verified = taupart(&["verify"], &certs.stdout);
    let checks = json_lines(&verified.stdout);
    let passed = checks.iter().filter(|c| c["ok"] == true).count();
    if certs.code != Some(0) || verified.code != Some(0) || passed != checks.len() || checks.is_empty() {
        problems.push(format!("{passed}/{} certificates re-verified", checks.len()));
    }
    let total = constructed + fallback;
    (
        problems.is_empty() && summary["counterexamples"] == 0,
        format!(
            "graphs={} pairs={total} constructed={constructed} fallback={fallback} fallback_rate={:.1}% witnesses={} replayed={replayed} certificates_verified={passed}/{} problems={:?}",
            summary["graphs"],
            100.0 * fallback as f64 / total.max(1) as f64,
            witnesses.lines().count(),
            checks.len(),
            problems.iter().take(3).collect::<Vec<_>>()
        ),
    )
}

fn ac3() -> Verdict {
    let start = Instant::now();
    let mut corpus: Vec<Graph> = Vec::new();
    for i in 0..AC3_RANDOM_GRAPHS {
        let n = 1 + i % 10;
        let p = [0.2, 0.35, 0.5, 0.7, 0.9][i % 5];
        corpus.push(random_gnp(n, p, 1000 + i as u64).unwrap());
    }
    corpus.extend((3..=10).map(Graph::cycle));
    corpus.extend((1..=10).map(Graph::path));
    corpus.extend((1..=10).map(Graph::complete));
    corpus.push(Graph::petersen());
    let mismatches = corpus
        .iter()
        .filter(|g| detour_order(g).unwrap().tau != dfs_detour_order(g))
        .count();
    let petersen = detour_order(&Graph::petersen()).unwrap().tau;
    let elapsed = start.elapsed();
    (
        mismatches == 0 && petersen == 10 && elapsed < AC3_LIMIT,
        format!(
            "graphs={} mismatches={mismatches} time={:.2}s limit={}s",
            corpus.len(),
            elapsed.as_secs_f64(),
            AC3_LIMIT.as_secs()
        ),
    )
}

fn ac4() -> Verdict {
    let mut corpus: Vec<Graph> = (0..AC4_RANDOM_GRAPHS)
        .map(|i| random_2connected(3 + i % 14, i % 7, 5000 + i as u64).unwrap())
        .collect();
    let random = corpus.len();
    corpus.extend(two_connected_graphs_up_to(7).unwrap());
    let bad = corpus
        .iter()
        .filter(|g| {
            let d = ear_decompose(g).unwrap();
            !validate_ears(g, &d).is_valid() || d.reconstruct().unwrap() != **g
        })
        .count();
    (
        bad == 0 && corpus.len() - random == 538,
        format!("random={random} enumerated={} failures={bad}", corpus.len() - random),
    )
}

fn ac5() -> Verdict {
    let start = Instant::now();
    let graphs = connected_graphs_up_to(6).unwrap();
    let (mut checks, mut exact_bad, mut built_bad) = (0, 0, 0);
    for g in &graphs {
        let tau = detour_order(g).unwrap().tau;
        for n in 1..=tau {
            checks += 1;
            let bound = tau.div_ceil(n);
            if exact_detour_chromatic(g, n).unwrap() > bound {
                exact_bad += 1;
            }
            let cert = detour_coloring(g, n).unwrap();
            if !cert.verified || cert.colors_used > bound {
                built_bad += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    (
        exact_bad == 0 && built_bad == 0 && elapsed < AC5_LIMIT,
        format!(
            "graphs={} (graph,n) pairs={checks} exact_violations={exact_bad} colouring_failures={built_bad} time={:.2}s limit={}s",
            graphs.len(),
            elapsed.as_secs_f64(),
            AC5_LIMIT.as_secs()
        ),
    )
}

fn ac6() -> Verdict {
    let start = Instant::now();
    let graphs = connected_graphs_up_to(6).unwrap();
    let (mut built_bad, mut exact_bad, mut chain_bad, mut fallbacks) = (0, 0, 0, 0);
    for g in &graphs {
        let tau = detour_order(g).unwrap().tau;
        let sc = star_coloring(g).unwrap();
        if !sc.witnesses.is_empty() {
            fallbacks += 1;
        }
        let cert = &sc.certificate;
        if !cert.verified || cert.colors_used > tau || !verify_star_coloring(g, &cert.colors) {
            built_bad += 1;
        }
        let chi_s = exact_star_chromatic(g).unwrap();
        if chi_s > tau {
            exact_bad += 1;
        }
        if exact_acyclic_chromatic(g).unwrap() > chi_s {
            chain_bad += 1;
        }
    }
    let elapsed = start.elapsed();
    (
        built_bad == 0 && exact_bad == 0 && chain_bad == 0 && elapsed < AC6_LIMIT,
        format!(
            "graphs={} colouring_failures={built_bad} repair_fallbacks={fallbacks} chi_s>tau={exact_bad} a>chi_s={chain_bad} time={:.2}s limit={}s",
            graphs.len(),
            elapsed.as_secs_f64(),
            AC6_LIMIT.as_secs()
        ),
    )
}

fn ac7() -> Verdict {
    let p4 = exact_star_chromatic(&Graph::path(4)).unwrap();
    let cliques: Vec<usize> = (1..=5).map(|n| exact_star_chromatic(&Graph::complete(n)).unwrap()).collect();
    let petersen = dfs_detour_order(&Graph::petersen());
    let c5 = exact_detour_chromatic(&Graph::cycle(5), 2).unwrap();
    (
        p4 == 3 && cliques == [1, 2, 3, 4, 5] && petersen == 10 && c5 == 2,
        format!("chi_s(P4)={p4} chi_s(K1..K5)={cliques:?} tau(Petersen)={petersen} chi_2(C5)={c5}"),
    )
}

fn ac8() -> Verdict {
    let runs: [&[&str]; 3] = [
        &["--deterministic", "hunt", "--enumerate", "6"],
        &["--deterministic", "hunt", "--random", "12", "--seed", "7", "--count", "100"],
        &["--deterministic", "bounds", "--enumerate", "5"],
    ];
    let mut identical = 0;
    for args in runs {
        let a = taupart(args, "").stdout;
        let mut single = vec!["--threads", "1"];
        single.extend_from_slice(args);
        let b = taupart(&single, "").stdout;
        if !a.is_empty() && a == b {
            identical += 1;
        }
    }
    (identical == runs.len(), format!("byte-identical sweep pairs={identical}/{}", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("AC1 path partitions of all connected graphs n<=6", ac1),
        ("AC2 construction audit on 2-connected graphs n<=6", ac2),
        ("AC3 detour DP equals DFS", ac3),
        ("AC4 ear decompositions validate and rebuild", ac4),
        ("AC5 detour colouring bound", ac5),
        ("AC6 star colouring bound", ac6),
        ("AC7 point values", ac7),
        ("AC8 deterministic sweeps", ac8),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let (ok, detail) = check();
        if !ok {
            failed += 1;
        }
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
