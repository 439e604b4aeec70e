//! Corpus sweeps: partition existence for every target, and the colouring
//! bounds, checked graph by graph with exhaustive engines.
//!
//! Each sweep checks the subset DP against the DFS detour engine on every
//! graph and aborts on the first disagreement.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::detour::{detour_order, dfs_detour_order};
use crate::ear::is_two_connected;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::parse_graph6;
use crate::multiway::exact_detour_chromatic;
use crate::partition::{
    tau_partition_with, FailureWitness, Method, PartitionCertificate, PartitionOptions,
    PartitionTarget,
};
use crate::starcolor::{exact_acyclic_chromatic, exact_star_chromatic};

/// One corpus line: its 1-based line number and text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub line: usize,
    pub text: String,
}

impl CorpusEntry {
    /// Numbers non-blank lines of `text` by their position in it.
    pub fn from_lines(text: &str) -> Vec<CorpusEntry> {
        text.lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| CorpusEntry { line: i + 1, text: l.trim_end().to_string() })
            .collect()
    }

    pub fn from_graphs(graphs: &[Graph]) -> Vec<CorpusEntry> {
        graphs
            .iter()
            .enumerate()
            .map(|(i, g)| CorpusEntry { line: i + 1, text: g.to_graph6() })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: usize,
    /// Omit wall-clock timings so reports are reproducible byte for byte.
    pub deterministic: bool,
    pub fail_fast: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { max_n: crate::partition::DEFAULT_MAX_N, deterministic: false, fail_fast: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// 2-connected, every ear step valid.
    Constructed,
    /// A cycle: the base case.
    BaseCycle,
    /// 2-connected, at least one ear step repaired by search.
    Fallback,
    /// Not 2-connected, solved by search directly.
    Routed,
    /// `τ < 2`, so there is no admissible target.
    Trivial,
    /// No partition exists for this target.
    Counterexample,
    /// A returned partition failed independent re-verification.
    Unverified,
    Capacity,
    ParseError,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Constructed => "constructed",
            Outcome::BaseCycle => "base-cycle",
            Outcome::Fallback => "fallback",
            Outcome::Routed => "routed",
            Outcome::Trivial => "trivial",
            Outcome::Counterexample => "counterexample",
            Outcome::Unverified => "unverified",
            Outcome::Capacity => "capacity",
            Outcome::ParseError => "parse-error",
        }
    }
}

/// One `(graph, target)` pair of a partition sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpcRecord {
    pub line: usize,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    pub outcome: Outcome,
    pub verified: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<FailureWitness>,
    /// Every witness reproduced its violation on replay.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses_replayed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

impl PpcRecord {
    fn bare(entry: &CorpusEntry, outcome: Outcome) -> Self {
        PpcRecord {
            line: entry.line,
            graph6: entry.text.clone(),
            n: None,
            tau: None,
            a: None,
            b: None,
            outcome,
            verified: false,
            witnesses: Vec::new(),
            witnesses_replayed: None,
            error: None,
            micros: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub corpus: String,
    pub graphs: usize,
    pub records: usize,
    pub outcomes: BTreeMap<String, usize>,
    pub counterexamples: usize,
    pub witnesses: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_instance_micros: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport<R> {
    pub records: Vec<R>,
    pub summary: SweepSummary,
}

/// Parses an entry and checks the two detour engines agree on it.
fn load(entry: &CorpusEntry, max_n: usize) -> std::result::Result<(Graph, usize), (Outcome, String)> {
    let g = parse_graph6(&entry.text).map_err(|e| match e {
        Error::Capacity { .. } => (Outcome::Capacity, e.to_string()),
        _ => (Outcome::ParseError, e.to_string()),
    })?;
    if g.order() > max_n {
        return Err((Outcome::Capacity, Error::capacity("sweep", g.order(), max_n).to_string()));
    }
    if g.order() == 0 {
        return Err((Outcome::ParseError, "empty graph has no detour order".into()));
    }
    let tau = detour_order(&g).map_err(|e| (Outcome::Capacity, e.to_string()))?.tau;
    Ok((g, tau))
}

fn engines_agree(g: &Graph, tau: usize) -> Result<()> {
    let dfs = dfs_detour_order(g);
    if dfs != tau {
        return Err(Error::Invariant(format!(
            "detour engines disagree on {}: DP {tau}, DFS {dfs}",
            g.to_graph6()
        )));
    }
    Ok(())
}

/// Checks a partition certificate using only DFS detour orders.
fn independently_valid(g: &Graph, cert: &PartitionCertificate) -> bool {
    let (a, b) = (cert.part_a, cert.part_b);
    let tau_of = |s: VertexSet| g.induced_subgraph(s).map(|h| dfs_detour_order(&h.graph));
    a.is_disjoint(b)
        && a.union(b) == g.vertices()
        && matches!(tau_of(a), Ok(t) if t <= cert.a)
        && matches!(tau_of(b), Ok(t) if t <= cert.b)
}

fn ppc_records(entry: &CorpusEntry, config: &SweepConfig) -> Result<Vec<PpcRecord>> {
    let (g, tau) = match load(entry, config.max_n) {
        Ok(x) => x,
        Err((outcome, msg)) => {
            let mut r = PpcRecord::bare(entry, outcome);
            r.error = Some(msg);
            return Ok(vec![r]);
        }
    };
    engines_agree(&g, tau)?;
    let mut base = PpcRecord::bare(entry, Outcome::Trivial);
    base.n = Some(g.order());
    base.tau = Some(tau);
    if tau < 2 {
        base.verified = true;
        return Ok(vec![base]);
    }
    let two_connected = is_two_connected(&g);
    let opts = PartitionOptions { max_n: config.max_n, ..Default::default() };
    let mut out = Vec::new();
    for t in PartitionTarget::all_for(tau) {
        let mut r = base.clone();
        r.a = Some(t.a);
        r.b = Some(t.b);
        let start = Instant::now();
        let result = tau_partition_with(&g, t, &opts);
        if !config.deterministic {
            r.micros = Some(start.elapsed().as_micros() as u64);
        }
        match result {
            Ok(cert) => {
                r.verified = independently_valid(&g, &cert);
                r.outcome = match (r.verified, two_connected, cert.method) {
                    (false, _, _) => Outcome::Unverified,
                    (true, false, _) => Outcome::Routed,
                    (true, true, Method::Constructed) => Outcome::Constructed,
                    (true, true, Method::BaseCycle) => Outcome::BaseCycle,
                    (true, true, Method::Fallback) => Outcome::Fallback,
                };
                if !cert.witnesses.is_empty() {
                    let replayed = cert.witnesses.iter().all(|w| w.reproduces().unwrap_or(false));
                    r.witnesses_replayed = Some(replayed);
                }
                r.witnesses = cert.witnesses;
            }
            Err(Error::PartitionCounterexample { .. }) => r.outcome = Outcome::Counterexample,
            Err(e @ Error::Capacity { .. }) => {
                r.outcome = Outcome::Capacity;
                r.error = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
        out.push(r);
    }
    Ok(out)
}

fn summarize<R>(corpus: &str, graphs: usize, records: &[R], outcome: impl Fn(&R) -> Vec<&'static str>) -> SweepSummary {
    let mut outcomes = BTreeMap::new();
    for r in records {
        for name in outcome(r) {
            *outcomes.entry(name.to_string()).or_insert(0) += 1;
        }
    }
    SweepSummary { corpus: corpus.to_string(), graphs, records: records.len(), outcomes, ..Default::default() }
}

/// For every graph and every `(a, b)` with `a + b = τ`, builds a partition,
/// re-verifies it and records how it was obtained.
pub fn sweep_ppc(corpus: &str, entries: &[CorpusEntry], config: &SweepConfig) -> Result<SweepReport<PpcRecord>> {
    let per_graph: Vec<Result<Vec<PpcRecord>>> =
        entries.par_iter().map(|e| ppc_records(e, config)).collect();
    let mut records = Vec::new();
    for r in per_graph {
        let rs = r?;
        let stop = config.fail_fast && rs.iter().any(|r| r.outcome == Outcome::Counterexample);
        records.extend(rs);
        if stop {
            break;
        }
    }
    let mut summary = summarize(corpus, entries.len(), &records, |r| vec![r.outcome.name()]);
    summary.counterexamples = records.iter().filter(|r| r.outcome == Outcome::Counterexample).count();
    summary.witnesses = records.iter().map(|r| r.witnesses.len()).sum();
    if !config.deterministic {
        summary.max_instance_micros = records.iter().filter_map(|r| r.micros).max();
    }
    Ok(SweepReport { records, summary })
}

/// Exact colouring numbers of one graph against their `τ` bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub line: usize,
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<usize>,
    /// `χ_n` for `n = 1..=τ`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chi_n: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub acyclic: Option<usize>,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub micros: Option<u64>,
}

fn bounds_record(entry: &CorpusEntry, config: &SweepConfig) -> Result<BoundsRecord> {
    let mut r = BoundsRecord {
        line: entry.line,
        graph6: entry.text.clone(),
        n: None,
        tau: None,
        chi_n: Vec::new(),
        chi_s: None,
        acyclic: None,
        violations: Vec::new(),
        error: None,
        micros: None,
    };
    let (g, tau) = match load(entry, config.max_n) {
        Ok(x) => x,
        Err((_, msg)) => {
            r.error = Some(msg);
            return Ok(r);
        }
    };
    engines_agree(&g, tau)?;
    r.n = Some(g.order());
    r.tau = Some(tau);
    let start = Instant::now();
    let exact = (|| -> Result<_> {
        let chi_n = (1..=tau).map(|n| exact_detour_chromatic(&g, n)).collect::<Result<Vec<_>>>()?;
        Ok((chi_n, exact_star_chromatic(&g)?, exact_acyclic_chromatic(&g)?))
    })();
    let (chi_n, chi_s, acyclic) = match exact {
        Ok(x) => x,
        Err(e @ Error::Capacity { .. }) => {
            r.error = Some(e.to_string());
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    for (i, &c) in chi_n.iter().enumerate() {
        let n = i + 1;
        if c > tau.div_ceil(n) {
            r.violations.push(format!("χ_{n} = {c} > ⌈{tau}/{n}⌉"));
        }
    }
    if chi_s > tau {
        r.violations.push(format!("χ_s = {chi_s} > τ = {tau}"));
    }
    if acyclic > chi_s {
        r.violations.push(format!("a = {acyclic} > χ_s = {chi_s}"));
    }
    r.chi_n = chi_n;
    r.chi_s = Some(chi_s);
    r.acyclic = Some(acyclic);
    if !config.deterministic {
        r.micros = Some(start.elapsed().as_micros() as u64);
    }
    Ok(r)
}

/// Checks `χ_n <= ⌈τ/n⌉` for every `n`, `χ_s <= τ` and `a <= χ_s`, all by
/// exhaustive search.
pub fn sweep_bounds(corpus: &str, entries: &[CorpusEntry], config: &SweepConfig) -> Result<SweepReport<BoundsRecord>> {
    let records = entries
        .par_iter()
        .map(|e| bounds_record(e, config))
        .collect::<Result<Vec<_>>>()?;
    let mut summary = summarize(corpus, entries.len(), &records, |r| {
        if r.error.is_some() {
            vec!["skipped"]
        } else if r.violations.is_empty() {
            vec!["within-bounds"]
        } else {
            vec!["violation"]
        }
    });
    summary.counterexamples = records.iter().filter(|r| !r.violations.is_empty()).count();
    if !config.deterministic {
        summary.max_instance_micros = records.iter().filter_map(|r| r.micros).max();
    }
    Ok(SweepReport { records, summary })
}
