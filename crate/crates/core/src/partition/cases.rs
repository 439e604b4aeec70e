//! The inductive step: given an `(a1, b1)`-partition of `G` and an ear
//! `x v1 .. vr y` with `H = G + ear`, propose a partition of `H` for the
//! target `(a, b)`. Nothing here checks the resulting bounds; the driver
//! verifies every step.

use std::collections::{BTreeMap, BTreeSet};

use super::{Bipartition, CaseTag, PartitionTarget, Side, Violation};
use crate::detour::{detour_order, end_vertices_of_order_paths, paths_of_order_at_least};
use crate::ear::Ear;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Result of one inductive step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub parts: Bipartition,
    pub case_tag: CaseTag,
    /// Vertices moved across by the long-path rule (empty otherwise).
    pub migrated: VertexSet,
    /// Side holding both ends of a single-edge ear, when they share one.
    pub(crate) crowded: Option<Side>,
}

/// Splits the cycle `order` (a cyclic vertex sequence) into its first `a`
/// vertices and the remaining `b`.
pub fn split_cycle(order: &[usize], t: PartitionTarget) -> Result<Bipartition> {
    if t.a + t.b != order.len() || t.a == 0 || t.b == 0 {
        return Err(Error::Target { a: t.a, b: t.b, tau: order.len() });
    }
    Ok(Bipartition {
        a: order[..t.a].iter().copied().collect(),
        b: order[t.a..].iter().copied().collect(),
    })
}

/// Base case: `A` is an arc of `a` consecutive cycle vertices starting at
/// vertex 0, `B` the complementary arc.
pub fn partition_cycle(g: &Graph, t: PartitionTarget) -> Result<Bipartition> {
    let n = g.order();
    if n < 3 || !g.is_connected() || (0..n).any(|v| g.degree(v) != 2) {
        return Err(Error::Argument("graph is not a cycle".into()));
    }
    let mut order = vec![0];
    let mut prev = 0;
    let mut cur = g.neighbors(0).first().unwrap();
    while cur != 0 {
        order.push(cur);
        let next = g.neighbors(cur).without(prev).first().unwrap();
        prev = cur;
        cur = next;
    }
    split_cycle(&order, t)
}

/// `(a1, b1)` with `a1 = max(1, τ(G) - b)` and `b1 = τ(G) - a1`.
pub fn choose_subtarget(t: PartitionTarget, tau_sub: usize) -> Result<PartitionTarget> {
    if tau_sub > t.a + t.b {
        return Err(Error::Invariant(format!(
            "subgraph detour order {tau_sub} exceeds target sum {}",
            t.a + t.b
        )));
    }
    if tau_sub < 2 {
        return Err(Error::Argument(format!("subgraph detour order {tau_sub} < 2")));
    }
    let a1 = tau_sub.saturating_sub(t.b).max(1);
    Ok(PartitionTarget { a: a1, b: tau_sub - a1 })
}

fn require_side(prior: &Bipartition, v: usize) -> Result<Side> {
    prior
        .side_of(v)
        .ok_or_else(|| Error::Argument(format!("ear endpoint {v} is not in the prior partition")))
}

fn require_fresh(h: &Graph, prior: &Bipartition, v: usize) -> Result<()> {
    if v >= h.order() || prior.side_of(v).is_some() {
        return Err(Error::Argument(format!("ear vertex {v} is not a fresh vertex of H")));
    }
    Ok(())
}

/// Single-edge ear (`r = 0`).
///
/// Ends in different parts: unchanged. Ends in the same part `P` with bound
/// `p`: unchanged if `τ(H⟨P⟩) <= p`; otherwise every path of `H⟨P⟩` with at
/// least `p + 1` vertices, read from either end, contributes its
/// `(p + 1)`-th vertex, and those vertices move to the other part.
pub fn extend_r0(
    h: &Graph,
    prior: Bipartition,
    x: usize,
    y: usize,
    t: PartitionTarget,
) -> Result<Extension> {
    let sx = require_side(&prior, x)?;
    let sy = require_side(&prior, y)?;
    if !h.has_edge(x, y) {
        return Err(Error::Argument(format!("{x}-{y} is not an edge of H")));
    }
    if sx != sy {
        return Ok(Extension {
            parts: prior,
            case_tag: CaseTag::EdgeSplit,
            migrated: VertexSet::EMPTY,
            crowded: None,
        });
    }
    let own = prior.get(sx);
    let bound = t.bound(sx);
    let sub = h.induced_subgraph(own)?;
    let tau = detour_order(&sub.graph)?.tau;
    let mut migrated = VertexSet::EMPTY;
    if tau > bound {
        for path in paths_of_order_at_least(&sub.graph, bound + 1) {
            migrated.insert(sub.original[path[bound]]);
        }
    }
    let parts = prior.moved(sx, migrated);
    Ok(Extension { parts, case_tag: CaseTag::EdgeSame, migrated, crowded: Some(sx) })
}

/// One fresh vertex (`r = 1`).
///
/// Ends in the same part: `v1` joins the other part. Ends split with
/// `x ∈ A'`, `y ∈ B'` (after swapping the names if needed): `v1` joins `A'`
/// unless `x` ends a path of `a` vertices in `H⟨A'⟩`, in which case it
/// joins `B'`.
pub fn extend_r1(
    h: &Graph,
    prior: Bipartition,
    x: usize,
    v1: usize,
    y: usize,
    t: PartitionTarget,
) -> Result<Extension> {
    let sx = require_side(&prior, x)?;
    let sy = require_side(&prior, y)?;
    require_fresh(h, &prior, v1)?;
    if sx == sy {
        let parts = prior.with(sx.other(), v1);
        return Ok(Extension {
            parts,
            case_tag: CaseTag::OneSame,
            migrated: VertexSet::EMPTY,
            crowded: None,
        });
    }
    let x_in_a = if sx == Side::A { x } else { y };
    let part_a = h.induced_subgraph(prior.a)?;
    let ends = end_vertices_of_order_paths(&part_a.graph, t.a)?;
    let local_x = part_a.new_id(x_in_a).expect("x is in A'");
    let side = if ends.contains(local_x) { Side::B } else { Side::A };
    Ok(Extension {
        parts: prior.with(side, v1),
        case_tag: CaseTag::OneSplit,
        migrated: VertexSet::EMPTY,
        crowded: None,
    })
}

/// Two or more fresh vertices (`r >= 2`): `v1` takes the side opposite
/// `x`, each `vi` for `2 <= i <= r-1` alternates from `v(i-1)`, and `vr`
/// takes the side opposite `y`.
pub fn extend_rge2(
    h: &Graph,
    prior: Bipartition,
    x: usize,
    internals: &[usize],
    y: usize,
    _t: PartitionTarget,
) -> Result<Extension> {
    let sx = require_side(&prior, x)?;
    let sy = require_side(&prior, y)?;
    let r = internals.len();
    if r < 2 {
        return Err(Error::Argument(format!("long-ear rule needs r >= 2, got {r}")));
    }
    for &v in internals {
        require_fresh(h, &prior, v)?;
    }
    let mut parts = prior;
    let mut side = sx.other();
    parts = parts.with(side, internals[0]);
    for &v in &internals[1..r - 1] {
        side = side.other();
        parts = parts.with(side, v);
    }
    parts = parts.with(sy.other(), internals[r - 1]);
    Ok(Extension { parts, case_tag: CaseTag::Long, migrated: VertexSet::EMPTY, crowded: None })
}

/// Applies the rule matching the ear's length.
pub fn apply_ear(h: &Graph, prior: Bipartition, ear: &Ear, t: PartitionTarget) -> Result<Extension> {
    match ear.internals.as_slice() {
        [] => extend_r0(h, prior, ear.x, ear.y, t),
        [v1] => extend_r1(h, prior, ear.x, *v1, ear.y, t),
        internals => extend_rge2(h, prior, ear.x, internals, ear.y, t),
    }
}

/// Bound violations of a proposed partition of `h`.
pub fn bound_violations(h: &Graph, parts: Bipartition, t: PartitionTarget) -> Result<Vec<Violation>> {
    let tau_a = crate::detour::tau_of_set(h, parts.a)?;
    let tau_b = crate::detour::tau_of_set(h, parts.b)?;
    let mut out = Vec::new();
    if tau_a > t.a {
        out.push(Violation::TauA { achieved: tau_a, bound: t.a });
    }
    if tau_b > t.b {
        out.push(Violation::TauB { achieved: tau_b, bound: t.b });
    }
    Ok(out)
}

/// Checks the adjacency claim behind the long-path migration against the
/// instance.
///
/// For every path `X = u1 .. uc` induced among the migrated vertices, each
/// `ui` with `q ∈ {i-1, c-i}` must satisfy `b >= q + 1` and must not be
/// adjacent to an end vertex of a path with at least `b - q` vertices in
/// the receiving part (before migration). Here `b` is the receiving part's
/// bound.
pub fn audit_migration(
    h: &Graph,
    prior: Bipartition,
    crowded: Side,
    migrated: VertexSet,
    t: PartitionTarget,
) -> Result<Vec<Violation>> {
    if migrated.is_empty() {
        return Ok(Vec::new());
    }
    let receiving = prior.get(crowded.other());
    let bound = t.bound(crowded.other());
    let recv = h.induced_subgraph(receiving)?;
    let moved = h.induced_subgraph(migrated)?;
    let mut ends_by_order: BTreeMap<usize, VertexSet> = BTreeMap::new();
    let mut found = BTreeSet::new();
    for xpath in paths_of_order_at_least(&moved.graph, 1) {
        let c = xpath.len();
        for (i, &local) in xpath.iter().enumerate() {
            let u = moved.original[local];
            for q in [i, c - 1 - i] {
                if bound < q + 1 {
                    found.insert(Violation::QExceedsB { vertex: u, q, b: bound });
                    continue;
                }
                let k = bound - q;
                let ends = match ends_by_order.get(&k) {
                    Some(&e) => e,
                    None => {
                        let e = recv.to_original(end_vertices_of_order_paths(&recv.graph, k)?);
                        ends_by_order.insert(k, e);
                        e
                    }
                };
                for e in h.neighbors(u).intersection(ends) {
                    found.insert(Violation::Claim1 { vertex: u, q, endpoint: e, min_order: k });
                }
            }
        }
    }
    Ok(found.into_iter().collect())
}
