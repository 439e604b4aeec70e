//! Exact longest paths.
//!
//! The primary engine is a dynamic program over `(vertex subset, endpoint)`
//! states: `ends[S]` is the set of vertices at which some path visiting
//! exactly the vertices of `S` can end. It runs per connected component and
//! is limited to components of at most [`MAX_DP_ORDER`] vertices.
//!
//! [`dfs_detour_order`] is an independent exhaustive search used to
//! cross-check the DP.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest component the subset DP will accept (table size `2^n` words).
pub const MAX_DP_ORDER: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetourRecord {
    /// Number of vertices on a longest path.
    pub tau: usize,
    pub witness_path: Vec<usize>,
}

/// Endpoint table for a graph of order at most [`MAX_DP_ORDER`].
fn endpoint_table(g: &Graph) -> Vec<u32> {
    let m = g.order();
    debug_assert!(m <= MAX_DP_ORDER);
    let adj: Vec<u32> = (0..m).map(|v| g.neighbors(v).bits() as u32).collect();
    let mut ends = vec![0u32; 1 << m];
    for v in 0..m {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..ends.len() {
        let mut e = ends[mask];
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            let mut ext = adj[v] & !(mask as u32);
            while ext != 0 {
                let u = ext.trailing_zeros();
                ext &= ext - 1;
                ends[mask | 1 << u] |= 1 << u;
            }
        }
    }
    ends
}

fn check_dp_capacity(n: usize) -> Result<()> {
    if n > MAX_DP_ORDER {
        return Err(Error::capacity("longest-path DP", n, MAX_DP_ORDER));
    }
    Ok(())
}

/// Longest path of a connected graph with at least one vertex.
fn longest_in_connected(g: &Graph) -> Result<DetourRecord> {
    let m = g.order();
    check_dp_capacity(m)?;
    if m == 1 {
        return Ok(DetourRecord { tau: 1, witness_path: vec![0] });
    }
    let ends = endpoint_table(g);
    let mut best_mask = 0usize;
    for (mask, &e) in ends.iter().enumerate() {
        if e != 0 && mask.count_ones() > best_mask.count_ones() {
            best_mask = mask;
            if mask.count_ones() as usize == m {
                break;
            }
        }
    }
    let mut mask = best_mask;
    let mut cur = ends[mask].trailing_zeros() as usize;
    let mut path = vec![cur];
    while mask.count_ones() > 1 {
        mask ^= 1 << cur;
        let prev = ends[mask] & g.neighbors(cur).bits() as u32;
        debug_assert!(prev != 0);
        cur = prev.trailing_zeros() as usize;
        path.push(cur);
    }
    path.reverse();
    Ok(DetourRecord { tau: path.len(), witness_path: path })
}

/// τ(g) with a longest-path witness. For disconnected graphs τ is the
/// maximum over components.
pub fn detour_order(g: &Graph) -> Result<DetourRecord> {
    if g.order() == 0 {
        return Err(Error::Argument("detour order of the empty graph is undefined".into()));
    }
    let mut best: Option<DetourRecord> = None;
    for comp in g.components() {
        if best.as_ref().is_some_and(|b| b.tau >= comp.len()) {
            continue;
        }
        let sub = g.induced_unchecked(comp);
        let rec = longest_in_connected(&sub.graph)?;
        if best.as_ref().map_or(true, |b| rec.tau > b.tau) {
            best = Some(DetourRecord {
                tau: rec.tau,
                witness_path: sub.path_to_original(&rec.witness_path),
            });
        }
    }
    Ok(best.expect("non-empty graph has a component"))
}

/// τ of the subgraph induced by `set`; 0 for the empty set.
pub fn tau_of_set(g: &Graph, set: VertexSet) -> Result<usize> {
    if set.is_empty() {
        return Ok(0);
    }
    let sub = g.induced_subgraph(set)?;
    Ok(detour_order(&sub.graph)?.tau)
}

/// Whether some path has exactly `k` vertices, i.e. `k <= τ(g)`.
pub fn has_path_of_order(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    if g.order() < k {
        return Ok(false);
    }
    Ok(detour_order(g)?.tau >= k)
}

/// Every path with at least `k` vertices, once per orientation.
///
/// Paths are listed in depth-first order from each start vertex in
/// increasing id order. The output grows exponentially; callers are
/// expected to bound the input size.
pub fn paths_of_order_at_least(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let k = k.max(1);
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..g.order() {
        path.push(s);
        extend_paths(g, &mut path, VertexSet::singleton(s), k, &mut out);
        path.pop();
    }
    out
}

fn extend_paths(
    g: &Graph,
    path: &mut Vec<usize>,
    used: VertexSet,
    k: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if path.len() >= k {
        out.push(path.clone());
    } else {
        let cur = *path.last().unwrap();
        let room = g.reachable(cur, g.vertices().difference(used)).len() - 1;
        if path.len() + room < k {
            return;
        }
    }
    let cur = *path.last().unwrap();
    for v in g.neighbors(cur).difference(used) {
        path.push(v);
        extend_paths(g, path, used.with(v), k, out);
        path.pop();
    }
}

/// Vertices at which some path of exactly `k` vertices ends. This equals
/// the set of end vertices of paths of order at least `k`, since every
/// longer path has an order-`k` prefix starting at the same end.
pub fn end_vertices_of_order_paths(g: &Graph, k: usize) -> Result<VertexSet> {
    let mut out = VertexSet::EMPTY;
    if k == 0 {
        return Ok(out);
    }
    for comp in g.components() {
        if comp.len() < k {
            continue;
        }
        if k == 1 {
            out = out.union(comp);
            continue;
        }
        check_dp_capacity(comp.len())?;
        let sub = g.induced_unchecked(comp);
        let ends = endpoint_table(&sub.graph);
        let mut local = 0u32;
        for (mask, &e) in ends.iter().enumerate() {
            if mask.count_ones() as usize == k {
                local |= e;
            }
        }
        out = out.union(sub.to_original(VertexSet::from_bits(local as u64)));
    }
    Ok(out)
}

/// τ of every induced subgraph of a small graph, answering queries in O(1).
pub struct InducedDetourTable {
    tau: Vec<u8>,
}

impl InducedDetourTable {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.order();
        check_dp_capacity(n)?;
        let ends = endpoint_table(g);
        let mut tau = vec![0u8; ends.len()];
        for mask in 1..ends.len() {
            let mut best = if ends[mask] != 0 { mask.count_ones() as u8 } else { 0 };
            if (best as usize) < n {
                let mut rest = mask;
                while rest != 0 {
                    let v = rest.trailing_zeros();
                    rest &= rest - 1;
                    best = best.max(tau[mask ^ 1 << v]);
                }
            }
            tau[mask] = best;
        }
        Ok(InducedDetourTable { tau })
    }

    #[inline]
    pub fn tau(&self, set: VertexSet) -> usize {
        self.tau[set.bits() as usize] as usize
    }
}

/// Exhaustive depth-first longest-path search with a reachability bound.
/// Independent of the subset DP; used as its oracle.
pub fn dfs_detour_order(g: &Graph) -> usize {
    let mut best = 0;
    for comp in g.components() {
        if comp.len() <= best {
            continue;
        }
        for s in comp {
            if dfs_longest(g, s, VertexSet::singleton(s), 1, comp, &mut best) {
                break;
            }
        }
    }
    best
}

/// Returns true once a path covering all of `comp` is found.
fn dfs_longest(
    g: &Graph,
    cur: usize,
    used: VertexSet,
    len: usize,
    comp: VertexSet,
    best: &mut usize,
) -> bool {
    if len > *best {
        *best = len;
    }
    if *best == comp.len() {
        return true;
    }
    let room = g.reachable(cur, comp.difference(used)).len() - 1;
    if len + room <= *best {
        return false;
    }
    for v in g.neighbors(cur).difference(used) {
        if dfs_longest(g, v, used.with(v), len + 1, comp, best) {
            return true;
        }
    }
    false
}
