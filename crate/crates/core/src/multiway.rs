//! Partitions into any number of parts with prescribed detour bounds, and
//! `n`-detour colourings built from them.

use serde::{Deserialize, Serialize};

use crate::certificate::{ColoringCertificate, ColoringProperty};
use crate::detour::{detour_order, tau_of_set, InducedDetourTable};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::partition::{tau_partition_with, PartitionOptions, PartitionTarget};

/// Largest order accepted by the exact colouring searches.
pub const MAX_EXACT_ORDER: usize = 20;

/// A partition `(V_1, ..., V_t)` with `τ⟨V_i⟩ <= a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuplePartition {
    pub tuple: Vec<usize>,
    pub parts: Vec<VertexSet>,
    pub taus: Vec<usize>,
    /// The residual tuple had to be shrunk at some step because the
    /// remainder's detour order fell below the residual sum.
    pub rebalanced: bool,
}

fn check_tuple(g: &Graph, tuple: &[usize]) -> Result<usize> {
    let tau = detour_order(g)?.tau;
    if tuple.is_empty() || tuple.contains(&0) || tuple.iter().sum::<usize>() != tau {
        return Err(Error::Tuple { parts: tuple.to_vec(), tau });
    }
    Ok(tau)
}

/// Shrinks `tail` from the last entry until it sums to `target`, dropping
/// entries that reach zero.
fn shrink(tail: &mut Vec<usize>, target: usize) {
    let mut excess = tail.iter().sum::<usize>() - target;
    while excess > 0 {
        let last = tail.last_mut().expect("excess implies entries");
        let cut = excess.min(*last);
        *last -= cut;
        excess -= cut;
        if *last == 0 {
            tail.pop();
        }
    }
}

pub fn t_partition(g: &Graph, tuple: &[usize]) -> Result<TuplePartition> {
    t_partition_with(g, tuple, &PartitionOptions::default())
}

/// Peels `V_1` off with an `(a_1, a_2 + ... + a_t)`-partition and recurses
/// on the rest.
pub fn t_partition_with(
    g: &Graph,
    tuple: &[usize],
    opts: &PartitionOptions,
) -> Result<TuplePartition> {
    check_tuple(g, tuple)?;
    let t = tuple.len();
    let mut parts = Vec::with_capacity(t);
    let mut residual = tuple.to_vec();
    let mut rest = g.vertices();
    let mut rebalanced = false;

    while parts.len() < t {
        let i = parts.len();
        if rest.is_empty() || residual.len() == i {
            parts.push(VertexSet::EMPTY);
            continue;
        }
        if residual.len() == i + 1 {
            parts.push(rest);
            rest = VertexSet::EMPTY;
            continue;
        }
        let local = g.induced_subgraph(rest)?;
        let target = PartitionTarget::new(residual[i], residual[i + 1..].iter().sum());
        let cert = tau_partition_with(&local.graph, target, opts)?;
        parts.push(local.to_original(cert.part_a));
        rest = local.to_original(cert.part_b);
        let tau_rest = tau_of_set(g, rest)?;
        if tau_rest < target.b {
            let mut tail = residual.split_off(i + 1);
            shrink(&mut tail, tau_rest);
            residual.extend(tail);
            rebalanced = true;
        }
    }

    let taus = parts.iter().map(|&p| tau_of_set(g, p)).collect::<Result<Vec<_>>>()?;
    if let Some(i) = (0..t).find(|&i| taus[i] > tuple[i]) {
        return Err(Error::Invariant(format!(
            "part {i} has τ = {} above its bound {}",
            taus[i], tuple[i]
        )));
    }
    Ok(TuplePartition { tuple: tuple.to_vec(), parts, taus, rebalanced })
}

/// The tuple `(n, ..., n, ν)` with `ν = τ mod n` (omitted when zero).
pub fn detour_tuple(tau: usize, n: usize) -> Vec<usize> {
    if n >= tau {
        return vec![tau];
    }
    let mut tuple = vec![n; tau / n];
    if tau % n != 0 {
        tuple.push(tau % n);
    }
    tuple
}

/// An `n`-detour colouring with at most `⌈τ/n⌉` colours: colour `i` goes
/// to part `i` of a partition for [`detour_tuple`].
pub fn detour_coloring(g: &Graph, n: usize) -> Result<ColoringCertificate> {
    if n == 0 {
        return Err(Error::Argument("the order bound n must be at least 1".into()));
    }
    let tau = detour_order(g)?.tau;
    let tp = t_partition(g, &detour_tuple(tau, n))?;
    let mut colors = vec![0; g.order()];
    for (c, part) in tp.parts.iter().enumerate() {
        for v in part.iter() {
            colors[v] = c;
        }
    }
    let cert = ColoringCertificate::new(g, colors, ColoringProperty::Detour, Some(n), tau.div_ceil(n))?;
    if !cert.verified {
        return Err(Error::Invariant(format!("detour colouring of {} failed verification", cert.graph6)));
    }
    Ok(cert)
}

fn color_classes(colors: &[usize]) -> Vec<VertexSet> {
    let k = colors.iter().max().map_or(0, |c| c + 1);
    let mut classes = vec![VertexSet::EMPTY; k];
    for (v, &c) in colors.iter().enumerate() {
        classes[c].insert(v);
    }
    classes
}

/// Every colour class induces a subgraph with no path of more than `n`
/// vertices.
pub fn verify_detour_coloring(g: &Graph, colors: &[usize], n: usize) -> Result<bool> {
    if colors.len() != g.order() {
        return Err(Error::Argument(format!(
            "{} colours given for {} vertices",
            colors.len(),
            g.order()
        )));
    }
    for class in color_classes(colors) {
        if tau_of_set(g, class)? > n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact `χ_n(G)` by backtracking over colour assignments in vertex order.
pub fn exact_detour_chromatic(g: &Graph, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::Argument("the order bound n must be at least 1".into()));
    }
    let order = g.order();
    if order > MAX_EXACT_ORDER {
        return Err(Error::capacity("exact detour chromatic number", order, MAX_EXACT_ORDER));
    }
    if order == 0 {
        return Ok(0);
    }
    let table = InducedDetourTable::new(g)?;
    for k in 1..=order {
        let mut classes = vec![VertexSet::EMPTY; k];
        if extend_detour(&table, n, 0, order, 0, &mut classes) {
            let mut colors = vec![0; order];
            for (c, class) in classes.iter().enumerate() {
                for v in class.iter() {
                    colors[v] = c;
                }
            }
            if !verify_detour_coloring(g, &colors, n)? {
                return Err(Error::Invariant("exact search produced an invalid colouring".into()));
            }
            return Ok(k);
        }
    }
    unreachable!("n singleton classes always work")
}

fn extend_detour(
    table: &InducedDetourTable,
    n: usize,
    v: usize,
    order: usize,
    used: usize,
    classes: &mut [VertexSet],
) -> bool {
    if v == order {
        return true;
    }
    let k = classes.len();
    for c in 0..k.min(used + 1) {
        let grown = classes[c].with(v);
        if table.tau(grown) <= n {
            let before = classes[c];
            classes[c] = grown;
            if extend_detour(table, n, v + 1, order, used.max(c + 1), classes) {
                return true;
            }
            classes[c] = before;
        }
    }
    false
}
