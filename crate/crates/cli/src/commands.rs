use std::fs;
use std::io::{self, Read, Write};

use anyhow::{bail, Context};
use clap::CommandFactory;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use taupart::blocks::{blocks, Block};
use taupart::certificate::{verify_coloring_certificate, verify_partition_certificate, Verdict};
use taupart::detour::{detour_order, MAX_DP_ORDER};
use taupart::ear::{ear_decompose, two_connectivity, validate_ears, Ear, EarDecomposition};
use taupart::enumerate::connected_graphs_up_to;
use taupart::generate::random_2connected;
use taupart::graph6::parse_graph6;
use taupart::multiway::detour_coloring;
use taupart::oracle::{sweep_bounds, sweep_ppc, CorpusEntry, Outcome, SweepConfig, SweepSummary};
use taupart::partition::{
    tau_partition_with, FailureWitness, PartitionCertificate, PartitionOptions, PartitionTarget,
};
use taupart::starcolor::star_coloring;
use taupart::{ColoringCertificate, Error, Graph, VertexSet};

use crate::output::Output;
use crate::{Cli, Command, CorpusArgs, Mode};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;
pub const EXIT_CAPACITY: u8 = 4;

/// The exit code of a run: verification failures outrank capacity errors,
/// which outrank usage errors.
#[derive(Default)]
struct Status(u8);

impl Status {
    fn raise(&mut self, code: u8) {
        let rank = |c: u8| match c {
            EXIT_VERIFY => 3,
            EXIT_CAPACITY => 2,
            EXIT_USAGE => 1,
            _ => 0,
        };
        if rank(code) > rank(self.0) {
            self.0 = code;
        }
    }
}

fn code_of(e: &Error) -> u8 {
    match e {
        Error::Capacity { .. } => EXIT_CAPACITY,
        Error::Invariant(_)
        | Error::PartitionCounterexample { .. }
        | Error::StarCounterexample { .. } => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    line: usize,
    input: &'a str,
    error: String,
}

pub fn run(cli: Cli) -> u8 {
    if cli.max_n > MAX_DP_ORDER {
        usage(&format!("--max-n / TAUPART_MAX_N must be at most {MAX_DP_ORDER}, got {}", cli.max_n));
    }
    if cli.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    }
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) => code_of(err),
                None => EXIT_USAGE,
            }
        }
    }
}

/// Reports a usage error the way clap does and exits with code 2.
fn usage(msg: &str) -> ! {
    Cli::command().error(clap::error::ErrorKind::ValueValidation, msg).exit()
}

fn read_input(path: &str) -> anyhow::Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
    } else {
        text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

fn dispatch(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Analyze { input } => analyze(cli, input),
        Command::Partition { input, a, b, all_pairs, dot } => {
            let target = match (a, b, all_pairs) {
                (Some(a), Some(b), false) => Some(PartitionTarget::new(*a, *b)),
                (None, None, true) => None,
                _ => usage("give either --a and --b, or --all-pairs"),
            };
            partition(cli, input, target, *dot)
        }
        Command::Color { input, mode, n, dot } => {
            if *mode == Mode::Detour && n.unwrap_or(0) == 0 {
                usage("--mode detour needs --n at least 1");
            }
            color(cli, input, *mode, n.unwrap_or(1), *dot)
        }
        Command::Hunt { corpus, witness_out } => hunt(cli, corpus, witness_out.as_deref()),
        Command::Bounds { corpus } => bounds(cli, corpus),
        Command::Verify { input } => verify(cli, input),
        Command::Ears { input } => ears(cli, input),
        Command::Generate { corpus } => generate(cli, corpus),
    }
}

/// Runs `f` on every non-blank line in parallel and writes results in
/// input order. Parse failures become error records and, unless
/// `--fail-fast` is set, do not change the exit code.
fn per_graph<R, F>(cli: &Cli, input: &str, f: F) -> anyhow::Result<u8>
where
    R: Send,
    F: Fn(&Graph) -> Result<Vec<R>, Error> + Sync,
    R: Emit,
{
    let text = read_input(input)?;
    let entries = CorpusEntry::from_lines(&text);
    let results: Vec<Result<Vec<R>, Error>> = entries
        .par_iter()
        .map(|e| parse_graph6(&e.text).and_then(|g| f(&g)))
        .collect();
    let mut out = Output::new(cli.format);
    let mut status = Status::default();
    for (entry, result) in entries.iter().zip(results) {
        match result {
            Ok(items) => {
                for item in items {
                    if let Some(code) = item.emit(&mut out) {
                        status.raise(code);
                    }
                }
            }
            Err(e) => {
                eprintln!("error: line {}: {e}", entry.line);
                out.record(&ErrorRecord { line: entry.line, input: &entry.text, error: e.to_string() });
                let parse = matches!(e, Error::Parse { .. });
                if !parse || cli.fail_fast {
                    status.raise(code_of(&e));
                }
                if cli.fail_fast {
                    break;
                }
            }
        }
    }
    out.finish();
    Ok(status.0)
}

/// A per-graph result that knows how to print itself; returns an exit code
/// when the result is a failure.
trait Emit {
    fn emit(self, out: &mut Output) -> Option<u8>;
}

#[derive(Serialize)]
struct Analysis {
    graph6: String,
    n: usize,
    m: usize,
    tau: usize,
    witness_path: Vec<usize>,
    two_connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    connectivity: Option<String>,
    blocks: Vec<Block>,
    cut_vertices: VertexSet,
}

impl Emit for Analysis {
    fn emit(self, out: &mut Output) -> Option<u8> {
        out.record(&self);
        None
    }
}

fn analyze(cli: &Cli, input: &str) -> anyhow::Result<u8> {
    per_graph(cli, input, |g| {
        let (tau, witness_path) = if g.order() == 0 {
            (0, Vec::new())
        } else {
            let d = detour_order(g)?;
            (d.tau, d.witness_path)
        };
        let conn = two_connectivity(g);
        let b = blocks(g);
        Ok(vec![Analysis {
            graph6: g.to_graph6(),
            n: g.order(),
            m: g.size(),
            tau,
            witness_path,
            two_connected: conn.is_ok(),
            connectivity: conn.err().map(|c| c.to_string()),
            blocks: b.blocks,
            cut_vertices: b.cut_vertices,
        }])
    })
}

enum Certified {
    Partition { graph: Graph, cert: Box<PartitionCertificate>, verdict: Verdict, dot: bool },
    Coloring { graph: Graph, cert: ColoringCertificate, verdict: Verdict, dot: bool },
}

impl Emit for Certified {
    fn emit(self, out: &mut Output) -> Option<u8> {
        let (verdict, graph6) = match &self {
            Certified::Partition { verdict, cert, .. } => (verdict.clone(), cert.graph6.clone()),
            Certified::Coloring { verdict, cert, .. } => (verdict.clone(), cert.graph6.clone()),
        };
        match self {
            Certified::Partition { graph, cert, dot: true, .. } => {
                let colors: Vec<usize> = (0..graph.order()).map(|v| usize::from(!cert.part_a.contains(v))).collect();
                out.raw(&graph.to_dot(Some(&colors)));
            }
            Certified::Partition { cert, .. } => out.record(&cert),
            Certified::Coloring { graph, cert, dot: true, .. } => out.raw(&graph.to_dot(Some(&cert.colors))),
            Certified::Coloring { cert, .. } => out.record(&cert),
        }
        match verdict {
            Ok(()) => None,
            Err(reason) => {
                eprintln!("error: certificate for {graph6} failed verification: {reason}");
                Some(EXIT_VERIFY)
            }
        }
    }
}

fn partition(cli: &Cli, input: &str, target: Option<PartitionTarget>, dot: bool) -> anyhow::Result<u8> {
    let opts = PartitionOptions { max_n: cli.max_n, ..Default::default() };
    per_graph(cli, input, |g| {
        let tau = detour_order(g)?.tau;
        let targets = match target {
            Some(t) => vec![t],
            None => PartitionTarget::all_for(tau),
        };
        let mut out = Vec::new();
        for t in targets {
            let cert = tau_partition_with(g, t, &opts)?;
            let verdict = verify_partition_certificate(&cert);
            out.push(Certified::Partition { graph: g.clone(), cert: Box::new(cert), verdict, dot });
        }
        Ok(out)
    })
}

fn color(cli: &Cli, input: &str, mode: Mode, n: usize, dot: bool) -> anyhow::Result<u8> {
    per_graph(cli, input, |g| {
        let cert = match mode {
            Mode::Detour => detour_coloring(g, n)?,
            Mode::Star => {
                let sc = star_coloring(g)?;
                for w in &sc.witnesses {
                    eprintln!("{}", serde_json::to_string(w).expect("witness serializes"));
                }
                sc.certificate
            }
        };
        let verdict = verify_coloring_certificate(&cert);
        Ok(vec![Certified::Coloring { graph: g.clone(), cert, verdict, dot }])
    })
}

#[derive(Serialize)]
struct EarRecord {
    graph6: String,
    base_cycle: Vec<usize>,
    ears: Vec<Ear>,
    valid: bool,
    reconstructs: bool,
}

impl Emit for EarRecord {
    fn emit(self, out: &mut Output) -> Option<u8> {
        let ok = self.valid && self.reconstructs;
        out.record(&self);
        (!ok).then_some(EXIT_VERIFY)
    }
}

fn ears(cli: &Cli, input: &str) -> anyhow::Result<u8> {
    per_graph(cli, input, |g| {
        let d: EarDecomposition = ear_decompose(g)?;
        let valid = validate_ears(g, &d).is_valid();
        let reconstructs = d.reconstruct().map(|h| &h == g).unwrap_or(false);
        Ok(vec![EarRecord {
            graph6: g.to_graph6(),
            base_cycle: d.base_cycle,
            ears: d.ears,
            valid,
            reconstructs,
        }])
    })
}

#[derive(Serialize)]
struct VerifyRecord {
    line: usize,
    kind: &'static str,
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

fn verify_line(text: &str) -> (&'static str, Verdict) {
    let value: Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return ("unknown", Err(format!("schema: {e}"))),
    };
    if value.get("colors").is_some() {
        let verdict = serde_json::from_value::<ColoringCertificate>(value)
            .map_err(|e| format!("schema: {e}"))
            .and_then(|c| verify_coloring_certificate(&c));
        ("coloring", verdict)
    } else {
        let verdict = serde_json::from_value::<PartitionCertificate>(value)
            .map_err(|e| format!("schema: {e}"))
            .and_then(|c| verify_partition_certificate(&c));
        ("partition", verdict)
    }
}

fn verify(cli: &Cli, input: &str) -> anyhow::Result<u8> {
    let text = read_input(input)?;
    let entries = CorpusEntry::from_lines(&text);
    let results: Vec<(&'static str, Verdict)> = entries.par_iter().map(|e| verify_line(&e.text)).collect();
    let mut out = Output::new(cli.format);
    let mut status = Status::default();
    for (entry, (kind, verdict)) in entries.iter().zip(results) {
        let ok = verdict.is_ok();
        if !ok {
            status.raise(EXIT_VERIFY);
        }
        out.record(&VerifyRecord { line: entry.line, kind, ok, reason: verdict.err() });
        if !ok && cli.fail_fast {
            break;
        }
    }
    out.finish();
    Ok(status.0)
}

/// Builds the corpus described by the flags: a file, seeded random
/// 2-connected graphs, or an enumeration.
fn corpus(args: &CorpusArgs) -> anyhow::Result<(String, Vec<CorpusEntry>)> {
    let keep = |g: &Graph| !args.two_connected || two_connectivity(g).is_ok();
    let suffix = if args.two_connected { " 2-connected" } else { "" };
    if let Some(n) = args.random {
        let extra = args.extra_ears.unwrap_or(n);
        let graphs = (0..args.count as u64)
            .map(|i| random_2connected(n, extra, args.seed.wrapping_add(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let desc = format!("random n={n} seed={} count={} extra-ears={extra}", args.seed, args.count);
        return Ok((desc, CorpusEntry::from_graphs(&graphs)));
    }
    if let Some(max_n) = args.enumerate {
        let graphs: Vec<Graph> = connected_graphs_up_to(max_n)?.into_iter().filter(|g| keep(g)).collect();
        return Ok((format!("enumerate connected n<={max_n}{suffix}"), CorpusEntry::from_graphs(&graphs)));
    }
    let path = args.source.as_deref().unwrap_or("-");
    let text = read_input(path)?;
    let entries = CorpusEntry::from_lines(&text)
        .into_iter()
        .filter(|e| parse_graph6(&e.text).map_or(true, |g| keep(&g)))
        .collect();
    Ok((format!("source={path}{suffix}"), entries))
}

fn sweep_config(cli: &Cli) -> SweepConfig {
    SweepConfig { max_n: cli.max_n, deterministic: cli.deterministic, fail_fast: cli.fail_fast }
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    kind: &'static str,
    #[serde(flatten)]
    summary: &'a SweepSummary,
}

#[derive(Serialize)]
struct WitnessLine<'a> {
    line: usize,
    input: &'a str,
    #[serde(flatten)]
    witness: &'a FailureWitness,
}

fn hunt(cli: &Cli, args: &CorpusArgs, witness_out: Option<&std::path::Path>) -> anyhow::Result<u8> {
    let (desc, entries) = corpus(args)?;
    let mut report = sweep_ppc(&desc, &entries, &sweep_config(cli))?;
    if let Some(path) = witness_out {
        let mut file = io::BufWriter::new(
            fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
        );
        for r in &mut report.records {
            for w in &r.witnesses {
                let line = WitnessLine { line: r.line, input: &r.graph6, witness: w };
                writeln!(file, "{}", serde_json::to_string(&line)?)?;
            }
            r.witnesses.clear();
        }
        file.flush()?;
    }
    let mut status = Status::default();
    let mut out = Output::new(cli.format);
    for r in &report.records {
        out.record(r);
        let failed = matches!(r.outcome, Outcome::Counterexample | Outcome::Unverified)
            || r.witnesses_replayed == Some(false);
        if failed {
            status.raise(EXIT_VERIFY);
        }
    }
    out.record(&SummaryLine { kind: "summary", summary: &report.summary });
    out.finish();
    Ok(status.0)
}

fn bounds(cli: &Cli, args: &CorpusArgs) -> anyhow::Result<u8> {
    let (desc, entries) = corpus(args)?;
    let report = sweep_bounds(&desc, &entries, &sweep_config(cli))?;
    let mut out = Output::new(cli.format);
    for r in &report.records {
        out.record(r);
    }
    out.record(&SummaryLine { kind: "summary", summary: &report.summary });
    out.finish();
    Ok(if report.summary.counterexamples > 0 { EXIT_VERIFY } else { EXIT_OK })
}

fn generate(cli: &Cli, args: &CorpusArgs) -> anyhow::Result<u8> {
    if args.random.is_none() && args.enumerate.is_none() {
        bail!("generate takes --random or --enumerate, not --source");
    }
    let (_, entries) = corpus(args)?;
    let mut out = Output::new(cli.format);
    for e in &entries {
        out.raw(&format!("{}\n", e.text));
    }
    out.finish();
    Ok(EXIT_OK)
}
