//! `(a, b)`-partitions of 2-connected graphs by induction along an ear
//! decomposition.
//!
//! The driver fixes the targets top-down (`(a, b)` for the whole graph,
//! then a sub-target for each smaller ear union) and builds partitions
//! bottom-up from the base cycle. Every inductive step is checked against
//! exact detour orders. A step that breaks a bound is recorded as a
//! [`FailureWitness`] and the stage is repaired by exhaustive search before
//! the induction continues.

pub mod brute;
pub mod cases;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use brute::{brute_force_partition, brute_force_partition_capped, DEFAULT_MAX_N};
pub use cases::{
    apply_ear, audit_migration, bound_violations, choose_subtarget, extend_r0, extend_r1,
    extend_rge2, partition_cycle, split_cycle, Extension,
};

use crate::detour::{detour_order, tau_of_set};
use crate::ear::{ear_decompose, ear_decompose_from, two_connectivity, Ear};
use crate::error::{Error, Result};
use crate::graph::{Graph, InducedSubgraph, VertexSet};
use crate::graph6::parse_graph6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionTarget {
    pub a: usize,
    pub b: usize,
}

impl PartitionTarget {
    pub fn new(a: usize, b: usize) -> Self {
        PartitionTarget { a, b }
    }

    /// `a, b >= 1` and `a + b = tau`.
    pub fn check(self, tau: usize) -> Result<()> {
        if self.a == 0 || self.b == 0 || self.a + self.b != tau {
            return Err(Error::Target { a: self.a, b: self.b, tau });
        }
        Ok(())
    }

    pub fn bound(self, side: Side) -> usize {
        match side {
            Side::A => self.a,
            Side::B => self.b,
        }
    }

    /// Every admissible target for detour order `tau`, by increasing `a`.
    pub fn all_for(tau: usize) -> Vec<PartitionTarget> {
        (1..tau).map(|a| PartitionTarget { a, b: tau - a }).collect()
    }
}

impl fmt::Display for PartitionTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    #[serde(rename = "A")]
    pub a: VertexSet,
    #[serde(rename = "B")]
    pub b: VertexSet,
}

impl Bipartition {
    pub fn get(&self, side: Side) -> VertexSet {
        match side {
            Side::A => self.a,
            Side::B => self.b,
        }
    }

    pub fn side_of(&self, v: usize) -> Option<Side> {
        if self.a.contains(v) {
            Some(Side::A)
        } else if self.b.contains(v) {
            Some(Side::B)
        } else {
            None
        }
    }

    /// Adds `v` to `side`.
    pub fn with(self, side: Side, v: usize) -> Self {
        match side {
            Side::A => Bipartition { a: self.a.with(v), b: self.b },
            Side::B => Bipartition { a: self.a, b: self.b.with(v) },
        }
    }

    /// Moves `set` out of `from` into the other side.
    pub fn moved(self, from: Side, set: VertexSet) -> Self {
        match from {
            Side::A => Bipartition { a: self.a.difference(set), b: self.b.union(set) },
            Side::B => Bipartition { a: self.a.union(set), b: self.b.difference(set) },
        }
    }

    fn map(self, f: impl Fn(usize) -> usize) -> Self {
        Bipartition {
            a: self.a.iter().map(&f).collect(),
            b: self.b.iter().map(&f).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Constructed,
    Fallback,
    BaseCycle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Constructed => "constructed",
            Method::Fallback => "fallback",
            Method::BaseCycle => "base-cycle",
        })
    }
}

/// Which inductive rule produced a step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseTag {
    /// Single-edge ear with ends in different parts.
    #[serde(rename = "1.1")]
    EdgeSplit,
    /// Single-edge ear with both ends in one part.
    #[serde(rename = "1.2")]
    EdgeSame,
    /// One fresh vertex, ends in one part.
    #[serde(rename = "2.1")]
    OneSame,
    /// One fresh vertex, ends split.
    #[serde(rename = "2.2")]
    OneSplit,
    /// Two or more fresh vertices.
    #[serde(rename = "3")]
    Long,
}

impl CaseTag {
    /// Whether the tag is the one an ear with `r` fresh vertices can get.
    pub fn matches_ear_length(self, r: usize) -> bool {
        match self {
            CaseTag::EdgeSplit | CaseTag::EdgeSame => r == 0,
            CaseTag::OneSame | CaseTag::OneSplit => r == 1,
            CaseTag::Long => r >= 2,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::EdgeSplit => "1.1",
            CaseTag::EdgeSame => "1.2",
            CaseTag::OneSame => "2.1",
            CaseTag::OneSplit => "2.2",
            CaseTag::Long => "3",
        })
    }
}

/// A failed check on one inductive step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// `τ⟨A⟩` exceeds `a`.
    TauA { achieved: usize, bound: usize },
    /// `τ⟨B⟩` exceeds `b`.
    TauB { achieved: usize, bound: usize },
    /// A migrated vertex is adjacent to `endpoint`, which ends a path of at
    /// least `min_order` vertices in the receiving part.
    Claim1 { vertex: usize, q: usize, endpoint: usize, min_order: usize },
    /// A migrated vertex sits at distance `q` from the end of an induced
    /// path of migrated vertices with `q + 1 > b`.
    QExceedsB { vertex: usize, q: usize, b: usize },
}

impl Violation {
    pub fn is_bound(&self) -> bool {
        matches!(self, Violation::TauA { .. } | Violation::TauB { .. })
    }

    fn map(self, f: impl Fn(usize) -> usize) -> Self {
        match self {
            Violation::Claim1 { vertex, q, endpoint, min_order } => {
                Violation::Claim1 { vertex: f(vertex), q, endpoint: f(endpoint), min_order }
            }
            Violation::QExceedsB { vertex, q, b } => Violation::QExceedsB { vertex: f(vertex), q, b },
            other => other,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TauA { achieved, bound } => {
                write!(f, "τ⟨A⟩ = {achieved} exceeds a = {bound} by {}", achieved - bound)
            }
            Violation::TauB { achieved, bound } => {
                write!(f, "τ⟨B⟩ = {achieved} exceeds b = {bound} by {}", achieved - bound)
            }
            Violation::Claim1 { vertex, q, endpoint, min_order } => write!(
                f,
                "migrated vertex {vertex} (q = {q}) is adjacent to {endpoint}, an end of a path of order >= {min_order}"
            ),
            Violation::QExceedsB { vertex, q, b } => {
                write!(f, "migrated vertex {vertex} has q = {q} but b = {b} < q + 1")
            }
        }
    }
}

/// One inductive step of a construction run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseStep {
    /// 1-based index of the ear in the decomposition.
    pub ear_index: usize,
    pub case_tag: CaseTag,
    pub migrated: VertexSet,
    pub target: PartitionTarget,
    pub subtarget: PartitionTarget,
    pub tau_a: usize,
    pub tau_b: usize,
    pub valid_after: bool,
}

/// An inductive step whose outcome failed a check.
///
/// The stage graph is stored compactly (only the vertices covered so far,
/// relabelled in increasing order); all ids in the witness refer to it, and
/// `original_ids` maps them back to the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureWitness {
    pub graph6: String,
    pub original_ids: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub sub_a: usize,
    pub sub_b: usize,
    pub ear_index: usize,
    pub case_tag: CaseTag,
    pub ear: Ear,
    pub pre_partition: Bipartition,
    pub post_partition: Bipartition,
    pub violation: Violation,
}

/// What replaying a witness produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub post_partition: Bipartition,
    pub violations: Vec<Violation>,
}

impl FailureWitness {
    pub fn target(&self) -> PartitionTarget {
        PartitionTarget { a: self.a, b: self.b }
    }

    /// Re-runs the recorded step on the recorded inputs.
    pub fn replay(&self) -> Result<Replay> {
        let h = parse_graph6(&self.graph6)?;
        let (ext, violations) = checked_step(&h, self.pre_partition, &self.ear, self.target(), true)?;
        Ok(Replay { post_partition: ext.parts, violations })
    }

    /// True if the replay yields the same partition and the same violation.
    pub fn reproduces(&self) -> Result<bool> {
        let r = self.replay()?;
        Ok(r.post_partition == self.post_partition && r.violations.contains(&self.violation))
    }
}

/// A verified `(a, b)`-partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub graph6: String,
    pub a: usize,
    pub b: usize,
    #[serde(rename = "A")]
    pub part_a: VertexSet,
    #[serde(rename = "B")]
    pub part_b: VertexSet,
    #[serde(rename = "tauA")]
    pub tau_a: usize,
    #[serde(rename = "tauB")]
    pub tau_b: usize,
    pub method: Method,
    #[serde(default)]
    pub trace: Vec<CaseStep>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<FailureWitness>,
}

impl PartitionCertificate {
    pub fn target(&self) -> PartitionTarget {
        PartitionTarget { a: self.a, b: self.b }
    }

    pub fn parts(&self) -> Bipartition {
        Bipartition { a: self.part_a, b: self.part_b }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionOptions {
    /// Order limit for the exhaustive search.
    pub max_n: usize,
    /// Start the ear decomposition from this cycle instead of the default.
    pub base_cycle: Option<Vec<usize>>,
    /// Check the migration adjacency claim whenever the long-path rule fires.
    pub audit: bool,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions { max_n: DEFAULT_MAX_N, base_cycle: None, audit: true }
    }
}

/// Applies the rule for `ear` and runs every check on the result.
fn checked_step(
    h: &Graph,
    prior: Bipartition,
    ear: &Ear,
    t: PartitionTarget,
    audit: bool,
) -> Result<(Extension, Vec<Violation>)> {
    let ext = apply_ear(h, prior, ear, t)?;
    let mut violations = bound_violations(h, ext.parts, t)?;
    if let (true, Some(side)) = (audit, ext.crowded) {
        violations.extend(audit_migration(h, prior, side, ext.migrated, t)?);
    }
    Ok((ext, violations))
}

fn certify(g: &Graph, parts: Bipartition, t: PartitionTarget) -> Result<(usize, usize)> {
    if !parts.a.is_disjoint(parts.b) || parts.a.union(parts.b) != g.vertices() {
        return Err(Error::Invariant(format!("{parts:?} is not a partition of the vertex set")));
    }
    let tau_a = tau_of_set(g, parts.a)?;
    let tau_b = tau_of_set(g, parts.b)?;
    if tau_a > t.a || tau_b > t.b {
        return Err(Error::Invariant(format!(
            "final partition misses {t}: τ⟨A⟩ = {tau_a}, τ⟨B⟩ = {tau_b}"
        )));
    }
    Ok((tau_a, tau_b))
}

fn compact_witness(
    local: &InducedSubgraph,
    target: PartitionTarget,
    sub: PartitionTarget,
    ear_index: usize,
    ear: &Ear,
    pre: Bipartition,
    ext: &Extension,
    violation: Violation,
) -> FailureWitness {
    let mut to_local = [usize::MAX; crate::graph::MAX_ORDER];
    for (i, &v) in local.original.iter().enumerate() {
        to_local[v] = i;
    }
    let f = |v: usize| to_local[v];
    FailureWitness {
        graph6: local.graph.to_graph6(),
        original_ids: local.original.clone(),
        a: target.a,
        b: target.b,
        sub_a: sub.a,
        sub_b: sub.b,
        ear_index,
        case_tag: ext.case_tag,
        ear: Ear { x: f(ear.x), y: f(ear.y), internals: ear.internals.iter().map(|&v| f(v)).collect() },
        pre_partition: pre.map(f),
        post_partition: ext.parts.map(f),
        violation: violation.map(f),
    }
}

pub fn tau_partition_2connected(g: &Graph, t: PartitionTarget) -> Result<PartitionCertificate> {
    tau_partition_2connected_with(g, t, &PartitionOptions::default())
}

pub fn tau_partition_2connected_with(
    g: &Graph,
    t: PartitionTarget,
    opts: &PartitionOptions,
) -> Result<PartitionCertificate> {
    two_connectivity(g).map_err(Error::NotTwoConnected)?;
    let tau = detour_order(g)?.tau;
    t.check(tau)?;
    let d = match &opts.base_cycle {
        Some(cycle) => ear_decompose_from(g, cycle)?,
        None => ear_decompose(g)?,
    };
    let stages = d.stages(g.order())?;
    let k = d.ears.len();

    let mut targets = vec![t; k + 1];
    for i in (0..k).rev() {
        let tau_i = detour_order(&stages[i].0)?.tau;
        targets[i] = choose_subtarget(targets[i + 1], tau_i)?;
    }

    let mut parts = split_cycle(&d.base_cycle, targets[0])?;
    let mut trace = Vec::with_capacity(k);
    let mut witnesses = Vec::new();
    let mut repaired = false;

    for (i, ear) in d.ears.iter().enumerate() {
        let (h, covered) = &stages[i + 1];
        let (target, sub) = (targets[i + 1], targets[i]);
        let (ext, violations) = checked_step(h, parts, ear, target, opts.audit)?;
        let valid = !violations.iter().any(Violation::is_bound);
        let tau_a = tau_of_set(h, ext.parts.a)?;
        let tau_b = tau_of_set(h, ext.parts.b)?;
        if !violations.is_empty() {
            let local = h.induced_subgraph(*covered)?;
            for v in violations {
                witnesses.push(compact_witness(&local, target, sub, i + 1, ear, parts, &ext, v));
            }
        }
        trace.push(CaseStep {
            ear_index: i + 1,
            case_tag: ext.case_tag,
            migrated: ext.migrated,
            target,
            subtarget: sub,
            tau_a,
            tau_b,
            valid_after: valid,
        });
        parts = if valid {
            ext.parts
        } else {
            repaired = true;
            let local = h.induced_subgraph(*covered)?;
            match brute_force_partition_capped(&local.graph, target, opts.max_n)? {
                Some(p) => Bipartition { a: local.to_original(p.a), b: local.to_original(p.b) },
                None => {
                    return Err(Error::PartitionCounterexample {
                        graph6: local.graph.to_graph6(),
                        a: target.a,
                        b: target.b,
                    })
                }
            }
        };
    }

    let (tau_a, tau_b) = certify(g, parts, t)?;
    let method = match (k, repaired) {
        (0, _) => Method::BaseCycle,
        (_, true) => Method::Fallback,
        (_, false) => Method::Constructed,
    };
    Ok(PartitionCertificate {
        graph6: g.to_graph6(),
        a: t.a,
        b: t.b,
        part_a: parts.a,
        part_b: parts.b,
        tau_a,
        tau_b,
        method,
        trace,
        witnesses,
    })
}

/// Any graph: 2-connected graphs go through the ear construction, all
/// others straight to the exhaustive search.
pub fn tau_partition(g: &Graph, t: PartitionTarget) -> Result<PartitionCertificate> {
    tau_partition_with(g, t, &PartitionOptions::default())
}

pub fn tau_partition_with(
    g: &Graph,
    t: PartitionTarget,
    opts: &PartitionOptions,
) -> Result<PartitionCertificate> {
    if two_connectivity(g).is_ok() {
        return tau_partition_2connected_with(g, t, opts);
    }
    let tau = detour_order(g)?.tau;
    t.check(tau)?;
    let parts = brute_force_partition_capped(g, t, opts.max_n)?.ok_or_else(|| {
        Error::PartitionCounterexample { graph6: g.to_graph6(), a: t.a, b: t.b }
    })?;
    let (tau_a, tau_b) = certify(g, parts, t)?;
    Ok(PartitionCertificate {
        graph6: g.to_graph6(),
        a: t.a,
        b: t.b,
        part_a: parts.a,
        part_b: parts.b,
        tau_a,
        tau_b,
        method: Method::Fallback,
        trace: Vec::new(),
        witnesses: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::dfs_detour_order;

    fn check(g: &Graph, cert: &PartitionCertificate) {
        let a = g.induced_subgraph(cert.part_a).unwrap().graph;
        let b = g.induced_subgraph(cert.part_b).unwrap().graph;
        assert!(dfs_detour_order(&a) <= cert.a);
        assert!(dfs_detour_order(&b) <= cert.b);
        assert_eq!(cert.part_a.union(cert.part_b), g.vertices());
        assert!(cert.part_a.is_disjoint(cert.part_b));
    }

    #[test]
    fn cycle_is_the_base_case() {
        let c7 = Graph::cycle(7);
        let cert = tau_partition_2connected(&c7, PartitionTarget::new(3, 4)).unwrap();
        assert_eq!(cert.method, Method::BaseCycle);
        assert!(cert.tau_a <= 3 && cert.tau_b <= 4);
        check(&c7, &cert);
        let cert = tau_partition(&Graph::cycle(5), PartitionTarget::new(2, 3)).unwrap();
        assert_eq!(cert.method, Method::BaseCycle);
    }

    #[test]
    fn complete_graph_on_four_all_targets() {
        let k4 = Graph::complete(4);
        for t in PartitionTarget::all_for(4) {
            let cert = tau_partition_2connected(&k4, t).unwrap();
            check(&k4, &cert);
            for step in &cert.trace {
                let r = cert.trace.len();
                assert!(step.ear_index <= r);
            }
        }
    }

    #[test]
    fn petersen_five_five() {
        let p = Graph::petersen();
        let t = PartitionTarget::new(5, 5);
        let cert = tau_partition_2connected(&p, t).unwrap();
        check(&p, &cert);
        assert!(brute_force_partition(&p, t).unwrap().is_some());
        for w in &cert.witnesses {
            assert!(w.reproduces().unwrap(), "{w:?}");
        }
    }

    #[test]
    fn non_two_connected_graphs_use_the_search() {
        let p5 = Graph::path(5);
        let cert = tau_partition(&p5, PartitionTarget::new(2, 3)).unwrap();
        assert_eq!(cert.method, Method::Fallback);
        check(&p5, &cert);

        let g = Graph::cycle(3).disjoint_union(&Graph::cycle(5)).unwrap();
        let cert = tau_partition(&g, PartitionTarget::new(2, 3)).unwrap();
        check(&g, &cert);

        assert!(matches!(
            tau_partition_2connected(&p5, PartitionTarget::new(2, 3)),
            Err(Error::NotTwoConnected(_))
        ));
    }

    #[test]
    fn target_errors() {
        assert_eq!(
            tau_partition(&Graph::cycle(6), PartitionTarget::new(2, 2)),
            Err(Error::Target { a: 2, b: 2, tau: 6 })
        );
        assert!(tau_partition(&Graph::empty(0), PartitionTarget::new(1, 1)).is_err());
    }

    #[test]
    fn trace_tags_match_ear_lengths() {
        let g = crate::generate::random_2connected(9, 4, 11).unwrap();
        let d = ear_decompose(&g).unwrap();
        let tau = detour_order(&g).unwrap().tau;
        for t in PartitionTarget::all_for(tau) {
            let cert = tau_partition_2connected(&g, t).unwrap();
            check(&g, &cert);
            for step in &cert.trace {
                let r = d.ears[step.ear_index - 1].internals.len();
                assert!(step.case_tag.matches_ear_length(r));
                assert!(step.subtarget.a <= step.target.a && step.subtarget.b <= step.target.b);
            }
        }
    }

    #[test]
    fn forced_base_cycle_is_honoured() {
        let k4 = Graph::complete(4);
        let opts = PartitionOptions { base_cycle: Some(vec![0, 1, 2]), ..Default::default() };
        let cert = tau_partition_2connected_with(&k4, PartitionTarget::new(2, 2), &opts).unwrap();
        check(&k4, &cert);
    }

    #[test]
    fn certificate_json_shape() {
        let cert = tau_partition(&Graph::cycle(6), PartitionTarget::new(2, 4)).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        for key in ["graph6", "a", "b", "A", "B", "tauA", "tauB", "method", "trace"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["method"], "base-cycle");
        let back: PartitionCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }
}
