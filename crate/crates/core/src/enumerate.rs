//! Isomorphism-free enumeration of small graphs, for whole-space sweeps
//! when `geng` output is not at hand.
//!
//! Graphs on `n` vertices are generated by attaching a new vertex to every
//! subset of every graph on `n - 1` vertices and keeping one representative
//! per canonical code. The canonical code is the maximum adjacency code over
//! all labellings compatible with an equitable degree refinement.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::ear::is_two_connected;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order [`graphs`] will enumerate (codes must fit in 64 bits and
/// the counts grow super-exponentially).
pub const MAX_ENUMERATION_ORDER: usize = 10;

#[inline]
fn bit(i: usize, j: usize) -> u64 {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    1u64 << (j * (j - 1) / 2 + i)
}

/// Stable vertex colouring by iterated neighbourhood signatures.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        colour = sigs.iter().map(|s| distinct.binary_search(s).unwrap()).collect();
        if distinct.len() == classes {
            return colour;
        }
        classes = distinct.len();
    }
}

/// Canonical code: equal for two graphs iff they are isomorphic.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.order();
    assert!(n <= MAX_ENUMERATION_ORDER + 1, "canonical codes need n <= 11");
    let colour = refine(g);
    let classes = colour.iter().max().map_or(0, |c| c + 1);
    let cells: Vec<Vec<usize>> = (0..classes)
        .map(|c| (0..n).filter(|&v| colour[v] == c).collect())
        .collect();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut label = vec![0usize; n];
    let mut best = 0u64;
    search_labellings(&cells, 0, 0, &mut label, &edges, &mut best);
    best
}

fn search_labellings(
    cells: &[Vec<usize>],
    cell: usize,
    offset: usize,
    label: &mut [usize],
    edges: &[(usize, usize)],
    best: &mut u64,
) {
    if cell == cells.len() {
        let code = edges.iter().fold(0u64, |acc, &(u, v)| acc | bit(label[u], label[v]));
        *best = (*best).max(code);
        return;
    }
    let mut members = cells[cell].clone();
    permute(&mut members, 0, &mut |perm| {
        for (k, &v) in perm.iter().enumerate() {
            label[v] = offset + k;
        }
        search_labellings(cells, cell + 1, offset + perm.len(), label, edges, best);
    });
}

fn permute(items: &mut [usize], k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn decode(n: usize, code: u64) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if code & bit(i, j) != 0 {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    g
}

fn codes(n: usize) -> Vec<u64> {
    if n <= 1 {
        return vec![0];
    }
    let smaller = codes(n - 1);
    let found: HashSet<u64> = smaller
        .par_iter()
        .flat_map_iter(|&code| {
            let base = decode(n - 1, code);
            (0u64..1 << (n - 1)).map(move |nbrs| {
                let mut g = base.clone();
                let v = g.add_vertex().unwrap();
                for u in VertexSet::from_bits(nbrs) {
                    g.add_edge(u, v).unwrap();
                }
                canonical_code(&g)
            })
        })
        .collect();
    let mut out: Vec<u64> = found.into_iter().collect();
    out.sort_unstable();
    out
}

/// All graphs on `n` vertices up to isomorphism, in canonical labelling,
/// sorted by canonical code.
pub fn graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::capacity("graph enumeration", n, MAX_ENUMERATION_ORDER));
    }
    Ok(codes(n).into_iter().map(|c| decode(n, c)).collect())
}

pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Connected graphs with `1..=max_n` vertices, by order.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

/// 2-connected graphs with `3..=max_n` vertices, by order.
pub fn two_connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        out.extend(graphs(n)?.into_iter().filter(is_two_connected));
    }
    Ok(out)
}
