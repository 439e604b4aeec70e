//! Simple undirected graphs on dense vertex ids `0..n`, with adjacency
//! stored as one machine word per vertex.

use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported order. Every vertex set fits in a `u64`.
pub const MAX_ORDER: usize = 64;

/// A set of vertex ids below [`MAX_ORDER`], stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        if n == MAX_ORDER {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_ORDER);
        VertexSet(1u64 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        v < MAX_ORDER && self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.0 |= 1u64 << v;
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < MAX_ORDER);
        self.0 &= !(1u64 << v);
    }

    #[inline]
    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    #[inline]
    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct SetVisitor;

        impl<'de> Visitor<'de> for SetVisitor {
            type Value = VertexSet;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a list of distinct vertex ids below {MAX_ORDER}")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<VertexSet, A::Error> {
                let mut set = VertexSet::EMPTY;
                while let Some(v) = seq.next_element::<usize>()? {
                    if v >= MAX_ORDER {
                        return Err(de::Error::custom(format!("vertex id {v} out of range")));
                    }
                    if set.contains(v) {
                        return Err(de::Error::custom(format!("duplicate vertex id {v}")));
                    }
                    set.insert(v);
                }
                Ok(set)
            }
        }

        deserializer.deserialize_seq(SetVisitor)
    }
}

/// A simple undirected graph. Adjacency is symmetric and loop-free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// An induced subgraph together with the map from its ids back to the host's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[new_id]` is the host id.
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    pub fn to_original(&self, set: VertexSet) -> VertexSet {
        set.iter().map(|v| self.original[v]).collect()
    }

    pub fn path_to_original(&self, path: &[usize]) -> Vec<usize> {
        path.iter().map(|&v| self.original[v]).collect()
    }

    /// Host id -> subgraph id.
    pub fn new_id(&self, host: usize) -> Option<usize> {
        self.original.iter().position(|&v| v == host)
    }
}

impl Graph {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::capacity("graph order", n, MAX_ORDER));
        }
        Ok(Graph { adj: vec![VertexSet::EMPTY; n] })
    }

    /// Builds a graph from an edge list. Duplicate edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(v)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.order() {
            return Err(Error::Argument(format!(
                "vertex {v} out of range for order {}",
                self.order()
            )));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Argument(format!("self-loop at {u}")));
        }
        if self.adj[u].contains(v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.order() && v < self.order() {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> Result<usize> {
        if self.order() == MAX_ORDER {
            return Err(Error::capacity("graph order", MAX_ORDER + 1, MAX_ORDER));
        }
        self.adj.push(VertexSet::EMPTY);
        Ok(self.order() - 1)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Returns the graph with the ear `x v1 .. vr y` attached, where the
    /// `r` internal vertices are fresh and get the next free ids. With
    /// `r = 0` the ear is the single edge `xy`.
    pub fn add_ear(&self, x: usize, y: usize, r: usize) -> Result<Graph> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x == y {
            return Err(Error::Argument(format!("ear endpoints coincide at {x}")));
        }
        if self.order() + r > MAX_ORDER {
            return Err(Error::capacity("graph order", self.order() + r, MAX_ORDER));
        }
        let mut h = self.clone();
        if r == 0 {
            h.add_edge(x, y)?;
            return Ok(h);
        }
        let mut prev = x;
        for _ in 0..r {
            let v = h.add_vertex()?;
            h.add_edge(prev, v)?;
            prev = v;
        }
        h.add_edge(prev, y)?;
        Ok(h)
    }

    /// Induced subgraph on `set`, relabelled to `0..|set|` in increasing id order.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<InducedSubgraph> {
        if !set.is_subset(self.vertices()) {
            let bad = set.difference(self.vertices()).first().unwrap_or(0);
            return Err(Error::Argument(format!(
                "vertex {bad} out of range for order {}",
                self.order()
            )));
        }
        Ok(self.induced_unchecked(set))
    }

    pub(crate) fn induced_unchecked(&self, set: VertexSet) -> InducedSubgraph {
        let original: Vec<usize> = set.iter().collect();
        let mut new_id = [usize::MAX; MAX_ORDER];
        for (i, &v) in original.iter().enumerate() {
            new_id[v] = i;
        }
        let adj = original
            .iter()
            .map(|&v| {
                self.adj[v]
                    .intersection(set)
                    .iter()
                    .map(|u| new_id[u])
                    .collect()
            })
            .collect();
        InducedSubgraph { graph: Graph { adj }, original }
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        if perm.len() != n
            || perm.iter().any(|&p| p >= n)
            || perm.iter().collect::<VertexSet>().len() != n
        {
            return Err(Error::Argument("relabelling is not a permutation".into()));
        }
        let mut h = Graph::new(n)?;
        for (u, v) in self.edges() {
            h.add_edge(perm[u], perm[v])?;
        }
        Ok(h)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reachable(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connected components ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.reachable(v, left);
            left = left.difference(c);
            out.push(c);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Plain DOT emitter. With `colors`, vertices carry a `color` label
    /// attribute so the output can be styled downstream.
    pub fn to_dot(&self, colors: Option<&[usize]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.order() {
            match colors.and_then(|c| c.get(v)) {
                Some(c) => out.push_str(&format!("  {v} [label=\"{v}:{c}\", colorscheme=set312, style=filled, fillcolor={}];\n", c % 12 + 1)),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    // Named families.

    pub fn empty(n: usize) -> Graph {
        Graph::new(n).expect("order within capacity")
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    /// The cycle `0-1-..-(n-1)-0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0).unwrap();
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn complete_bipartite(p: usize, q: usize) -> Graph {
        let mut g = Graph::empty(p + q);
        for u in 0..p {
            for v in p..p + q {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::complete_bipartite(1, leaves)
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Graph {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
        }
        g
    }

    /// Disjoint union; `other`'s vertices are shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.order();
        let mut g = Graph::new(shift + other.order())?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift)?;
        }
        Ok(g)
    }
}
