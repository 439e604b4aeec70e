//! Star colourings with at most `τ(G)` colours.
//!
//! A `(2, ..., 2[, 1])`-partition gives parts inducing matchings plus
//! isolated vertices; each part gets a private pair of colours, which makes
//! a proper colouring. Bicoloured 4-vertex paths are then removed one at a
//! time by recolouring inside a part.

use serde::{Deserialize, Serialize};

use crate::certificate::{ColoringCertificate, ColoringProperty, RepairSummary};
use crate::detour::detour_order;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::multiway::{t_partition, MAX_EXACT_ORDER};

/// A proper colouring where part `i` owns colours `2i` and `2i + 1`; an odd
/// tail part owns a single colour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairPartitionColoring {
    pub parts: Vec<VertexSet>,
    pub pair_colors: Vec<Vec<usize>>,
    pub colors: Vec<usize>,
}

impl PairPartitionColoring {
    fn part_of(&self, v: usize) -> usize {
        self.parts.iter().position(|p| p.contains(v)).expect("parts cover the graph")
    }
}

/// The pair-partition colouring of a connected graph.
pub fn pair_partition_coloring(g: &Graph) -> Result<PairPartitionColoring> {
    if !g.is_connected() || g.order() == 0 {
        return Err(Error::Argument("pair-partition colouring needs a connected, non-empty graph".into()));
    }
    let tau = detour_order(g)?.tau;
    let mut tuple = vec![2; tau / 2];
    if tau % 2 == 1 {
        tuple.push(1);
    }
    let parts = t_partition(g, &tuple)?.parts;
    let mut colors = vec![usize::MAX; g.order()];
    let mut pair_colors = Vec::with_capacity(parts.len());
    for (i, (&part, &a)) in parts.iter().zip(&tuple).enumerate() {
        let (c1, c2) = (2 * i, 2 * i + 1);
        pair_colors.push(if a == 2 { vec![c1, c2] } else { vec![c1] });
        for v in part.iter() {
            let inside = g.neighbors(v).intersection(part);
            if inside.len() > 1 {
                return Err(Error::Invariant(format!("vertex {v} has degree {} inside its part", inside.len())));
            }
            colors[v] = match inside.first() {
                Some(u) if u < v => c2,
                _ => c1,
            };
        }
    }
    Ok(PairPartitionColoring { parts, pair_colors, colors })
}

/// Every path on four vertices that carries exactly two colours, oriented
/// with the smaller end first and sorted.
pub fn find_bicolored_p4s(g: &Graph, colors: &[usize]) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for b in g.vertices() {
        for c in g.neighbors(b) {
            for a in g.neighbors(b).without(c) {
                for d in g.neighbors(c).without(b).without(a) {
                    if a > d {
                        continue;
                    }
                    let p = [a, b, c, d];
                    let mut cs: Vec<usize> = p.iter().map(|&v| colors[v]).collect();
                    cs.sort_unstable();
                    cs.dedup();
                    if cs.len() == 2 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// What the repair loop did.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairOutcome {
    pub coloring: PairPartitionColoring,
    pub initial_bicolored: usize,
    pub steps: usize,
    /// Steps after which the number of bicoloured paths did not go down.
    pub non_decreasing_steps: usize,
    /// Bicoloured paths left when the step cap was reached; empty on success.
    pub residual: Vec<[usize; 4]>,
}

impl RepairOutcome {
    pub fn succeeded(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Repairs bicoloured 4-vertex paths one at a time, first path first.
///
/// For a path whose vertices lie in parts `i < j`, look at its two vertices
/// in part `i`. If one of them has no neighbour inside `V_i` it switches to
/// the other colour of the pair; otherwise the first of them trades colours
/// with its partner in `V_i`. The loop stops when no bicoloured path is
/// left or after `2 n^2` steps.
pub fn repair_bicolored_p4s(g: &Graph, ppc: &PairPartitionColoring) -> RepairOutcome {
    let cap = 2 * g.order() * g.order();
    let mut coloring = ppc.clone();
    let mut found = find_bicolored_p4s(g, &coloring.colors);
    let initial_bicolored = found.len();
    let (mut steps, mut non_decreasing_steps) = (0, 0);
    while !found.is_empty() && steps < cap {
        let path = found[0];
        let i = path.iter().map(|&v| coloring.part_of(v)).min().expect("four vertices");
        let part = coloring.parts[i];
        let ends: Vec<usize> = path.iter().copied().filter(|&v| part.contains(v)).collect();
        let pair = coloring.pair_colors[i].clone();
        let other = |c: usize| if c == pair[0] { pair[1] } else { pair[0] };
        if pair.len() == 2 {
            if let Some(&u) = ends.iter().find(|&&u| g.neighbors(u).is_disjoint(part)) {
                coloring.colors[u] = other(coloring.colors[u]);
            } else {
                let u = ends[0];
                let partner = g.neighbors(u).intersection(part).first().expect("degree one in part");
                coloring.colors.swap(u, partner);
            }
        }
        steps += 1;
        let next = find_bicolored_p4s(g, &coloring.colors);
        if next.len() >= found.len() {
            non_decreasing_steps += 1;
        }
        found = next;
    }
    RepairOutcome { coloring, initial_bicolored, steps, non_decreasing_steps, residual: found }
}

/// A component whose repair loop did not converge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepairWitness {
    pub graph6: String,
    pub original_ids: Vec<usize>,
    pub initial_colors: Vec<usize>,
    pub steps: usize,
    pub residual: Vec<[usize; 4]>,
}

/// A star colouring together with any components that had to fall back to
/// exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarColoring {
    pub certificate: ColoringCertificate,
    pub witnesses: Vec<RepairWitness>,
}

/// Star colouring with at most `τ(G)` colours, component by component with
/// shared colour indices.
pub fn star_coloring(g: &Graph) -> Result<StarColoring> {
    let tau = detour_order(g)?.tau;
    let mut colors = vec![0; g.order()];
    let mut summary = RepairSummary::default();
    let mut witnesses = Vec::new();
    for comp in g.components() {
        let local = g.induced_subgraph(comp)?;
        let h = &local.graph;
        let ppc = pair_partition_coloring(h)?;
        let outcome = repair_bicolored_p4s(h, &ppc);
        summary.initial_bicolored += outcome.initial_bicolored;
        summary.steps += outcome.steps;
        let local_colors = if outcome.succeeded() {
            outcome.coloring.colors
        } else {
            summary.fallback = true;
            witnesses.push(RepairWitness {
                graph6: h.to_graph6(),
                original_ids: local.original.clone(),
                initial_colors: ppc.colors.clone(),
                steps: outcome.steps,
                residual: outcome.residual,
            });
            let bound = detour_order(h)?.tau;
            star_coloring_within(h, bound)?.ok_or_else(|| Error::StarCounterexample {
                graph6: h.to_graph6(),
                bound,
            })?
        };
        for (i, &v) in local.original.iter().enumerate() {
            colors[v] = local_colors[i];
        }
    }
    let mut cert = ColoringCertificate::new(g, colors, ColoringProperty::Star, None, tau)?;
    if !cert.verified {
        return Err(Error::Invariant(format!("star colouring of {} failed verification", cert.graph6)));
    }
    cert.repair = Some(summary);
    Ok(StarColoring { certificate: cert, witnesses })
}

pub fn verify_proper_coloring(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.order() && g.edges().all(|(u, v)| colors[u] != colors[v])
}

/// Proper, and every path on four vertices sees at least three colours.
pub fn verify_star_coloring(g: &Graph, colors: &[usize]) -> bool {
    verify_proper_coloring(g, colors) && find_bicolored_p4s(g, colors).is_empty()
}

/// Proper, and the union of any two colour classes induces a forest.
pub fn verify_acyclic_coloring(g: &Graph, colors: &[usize]) -> bool {
    if !verify_proper_coloring(g, colors) {
        return false;
    }
    let k = colors.iter().max().map_or(0, |c| c + 1);
    let mut classes = vec![VertexSet::EMPTY; k];
    for (v, &c) in colors.iter().enumerate() {
        classes[c].insert(v);
    }
    for i in 0..k {
        for j in i + 1..k {
            let h = g.induced_subgraph(classes[i].union(classes[j])).expect("subset of vertices").graph;
            if h.size() + h.components().len() != h.order() {
                return false;
            }
        }
    }
    true
}

/// All 4-vertex paths, each listed once, grouped by their largest vertex.
fn p4s_by_last_vertex(g: &Graph) -> Vec<Vec<[usize; 4]>> {
    let mut by_last = vec![Vec::new(); g.order()];
    for b in g.vertices() {
        for c in g.neighbors(b) {
            for a in g.neighbors(b).without(c) {
                for d in g.neighbors(c).without(b).without(a) {
                    if a < d {
                        let p = [a, b, c, d];
                        by_last[*p.iter().max().unwrap()].push(p);
                    }
                }
            }
        }
    }
    by_last
}

fn check_order(g: &Graph, what: &'static str) -> Result<()> {
    if g.order() > MAX_EXACT_ORDER {
        return Err(Error::capacity(what, g.order(), MAX_EXACT_ORDER));
    }
    Ok(())
}

/// A star colouring with at most `k` colours, if one exists.
pub fn star_coloring_within(g: &Graph, k: usize) -> Result<Option<Vec<usize>>> {
    check_order(g, "exhaustive star colouring")?;
    let p4s = p4s_by_last_vertex(g);
    let mut colors = vec![usize::MAX; g.order()];
    let found = backtrack(g, k, 0, 0, &mut colors, &|colors, v| {
        p4s[v].iter().all(|p| {
            let (x, y) = (colors[p[0]], colors[p[1]]);
            !(colors[p[2]] == x && colors[p[3]] == y)
        })
    });
    Ok(found.then_some(colors))
}

/// Exact star chromatic number.
pub fn exact_star_chromatic(g: &Graph) -> Result<usize> {
    check_order(g, "exact star chromatic number")?;
    for k in 0..=g.order() {
        if let Some(colors) = star_coloring_within(g, k)? {
            if !verify_star_coloring(g, &colors) {
                return Err(Error::Invariant("exact search produced an invalid star colouring".into()));
            }
            return Ok(k);
        }
    }
    unreachable!("distinct colours always work")
}

/// Exact acyclic chromatic number.
pub fn exact_acyclic_chromatic(g: &Graph) -> Result<usize> {
    check_order(g, "exact acyclic chromatic number")?;
    for k in 0..=g.order() {
        let mut colors = vec![usize::MAX; g.order()];
        if backtrack(g, k, 0, 0, &mut colors, &|colors, v| no_bicoloured_cycle_through(g, colors, v)) {
            if !verify_acyclic_coloring(g, &colors) {
                return Err(Error::Invariant("exact search produced an invalid acyclic colouring".into()));
            }
            return Ok(k);
        }
    }
    unreachable!("distinct colours always work")
}

/// Among vertices `0..=v`, no cycle using only `colors[v]` and one other
/// colour passes through `v`.
fn no_bicoloured_cycle_through(g: &Graph, colors: &[usize], v: usize) -> bool {
    let assigned = VertexSet::full(v + 1);
    let cv = colors[v];
    let nbrs = g.neighbors(v).intersection(assigned);
    for d in nbrs.iter().map(|u| colors[u]).collect::<std::collections::BTreeSet<_>>() {
        let class: VertexSet = assigned.iter().filter(|&u| colors[u] == cv || colors[u] == d).collect();
        let rest = class.without(v);
        let mut seen = VertexSet::EMPTY;
        for u in nbrs.intersection(class) {
            if seen.contains(u) {
                return false;
            }
            seen = seen.union(g.reachable(u, rest));
        }
    }
    true
}

/// Assigns colours to vertices in id order, with colour `c` allowed only
/// once colours `0..c` are in use.
fn backtrack(
    g: &Graph,
    k: usize,
    v: usize,
    used: usize,
    colors: &mut [usize],
    ok: &dyn Fn(&[usize], usize) -> bool,
) -> bool {
    if v == g.order() {
        return true;
    }
    for c in 0..k.min(used + 1) {
        if g.neighbors(v).iter().any(|u| u < v && colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if ok(colors, v) && backtrack(g, k, v + 1, used.max(c + 1), colors, ok) {
            return true;
        }
    }
    colors[v] = usize::MAX;
    false
}
