//! Whitney ear decompositions of 2-connected graphs.
//!
//! The default decomposition is Schmidt's chain decomposition over a DFS
//! from vertex 0 that visits neighbours in increasing id order. For a
//! 2-connected graph the first chain closes a cycle and every later chain is
//! an open ear whose endpoints are already covered.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::blocks::blocks;
use crate::error::{Connectivity, Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ear {
    pub x: usize,
    pub y: usize,
    pub internals: Vec<usize>,
}

impl Ear {
    /// The ear as a vertex sequence `x v1 .. vr y`.
    pub fn walk(&self) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.internals.len() + 2);
        w.push(self.x);
        w.extend_from_slice(&self.internals);
        w.push(self.y);
        w
    }

    pub fn edge_count(&self) -> usize {
        self.internals.len() + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarDecomposition {
    pub base_cycle: Vec<usize>,
    pub ears: Vec<Ear>,
}

impl EarDecomposition {
    pub fn edge_count(&self) -> usize {
        self.base_cycle.len() + self.ears.iter().map(Ear::edge_count).sum::<usize>()
    }

    /// Rebuilds the graph by starting from a fresh cycle and folding
    /// [`Graph::add_ear`] over the ears, then mapping the fresh ids back
    /// to the ids recorded in the decomposition.
    pub fn reconstruct(&self) -> Result<Graph> {
        let len = self.base_cycle.len();
        if len < 3 {
            return Err(Error::Argument(format!("base cycle has length {len}")));
        }
        let mut g = Graph::cycle(len);
        let mut label: Vec<usize> = self.base_cycle.clone();
        let fresh = |label: &[usize], v: usize| {
            label
                .iter()
                .position(|&l| l == v)
                .ok_or_else(|| Error::Argument(format!("ear endpoint {v} not yet covered")))
        };
        for ear in &self.ears {
            let x = fresh(&label, ear.x)?;
            let y = fresh(&label, ear.y)?;
            g = g.add_ear(x, y, ear.internals.len())?;
            label.extend_from_slice(&ear.internals);
        }
        g.relabel(&label)
    }

    /// The graphs `P0`, `P0 ∪ P1`, ..., on the host's vertex ids, together
    /// with the vertices covered at each stage. Uncovered vertices are
    /// isolated in the stage graph.
    pub fn stages(&self, n: usize) -> Result<Vec<(Graph, VertexSet)>> {
        let mut g = Graph::new(n)?;
        let mut covered = VertexSet::EMPTY;
        let len = self.base_cycle.len();
        for i in 0..len {
            g.add_edge(self.base_cycle[i], self.base_cycle[(i + 1) % len])?;
            covered.insert(self.base_cycle[i]);
        }
        let mut out = vec![(g.clone(), covered)];
        for ear in &self.ears {
            let walk = ear.walk();
            for w in walk.windows(2) {
                g.add_edge(w[0], w[1])?;
            }
            covered = covered.union(ear.internals.iter().copied().collect());
            out.push((g.clone(), covered));
        }
        Ok(out)
    }
}

/// Explains why `g` is not 2-connected, or `Ok` if it is.
pub fn two_connectivity(g: &Graph) -> Result<(), Connectivity> {
    if g.order() < 3 {
        return Err(Connectivity::TooSmall(g.order()));
    }
    if !g.is_connected() {
        return Err(Connectivity::Disconnected);
    }
    match blocks(g).cut_vertices.first() {
        Some(v) => Err(Connectivity::CutVertex(v)),
        None => Ok(()),
    }
}

/// Connected, at least three vertices, and no cut vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    two_connectivity(g).is_ok()
}

/// Chain decomposition with smallest-id tie-breaking.
pub fn ear_decompose(g: &Graph) -> Result<EarDecomposition> {
    two_connectivity(g).map_err(Error::NotTwoConnected)?;
    let n = g.order();

    // Iterative DFS from 0, neighbours in increasing order.
    let mut order = Vec::with_capacity(n);
    let mut index = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![(0usize, g.neighbors(0))];
    index[0] = 0;
    order.push(0);
    while let Some((u, rest)) = stack.last_mut() {
        let u = *u;
        match rest.first() {
            Some(v) => {
                rest.remove(v);
                if index[v] == usize::MAX {
                    index[v] = order.len();
                    order.push(v);
                    parent[v] = u;
                    stack.push((v, g.neighbors(v)));
                }
            }
            None => {
                stack.pop();
            }
        }
    }

    let mut visited = VertexSet::EMPTY;
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        // Back edges v -> w with w a proper descendant, by DFS index.
        let mut back: Vec<usize> = g
            .neighbors(v)
            .iter()
            .filter(|&w| index[w] > index[v] && parent[w] != v)
            .collect();
        back.sort_by_key(|&w| index[w]);
        for w in back {
            visited.insert(v);
            let mut chain = vec![v];
            let mut cur = w;
            while !visited.contains(cur) {
                visited.insert(cur);
                chain.push(cur);
                cur = parent[cur];
            }
            chain.push(cur);
            chains.push(chain);
        }
    }

    let mut chains = chains.into_iter();
    let first = chains
        .next()
        .ok_or_else(|| Error::Invariant("2-connected graph without a back edge".into()))?;
    let mut base_cycle = first;
    base_cycle.pop();
    let ears = chains
        .map(|c| {
            let x = c[0];
            let y = *c.last().unwrap();
            if x == y {
                return Err(Error::NotTwoConnected(Connectivity::CutVertex(x)));
            }
            Ok(Ear { x, y, internals: c[1..c.len() - 1].to_vec() })
        })
        .collect::<Result<Vec<_>>>()?;
    let d = EarDecomposition { base_cycle, ears };
    debug_assert!(validate_ears(g, &d).is_valid(), "{:?}", validate_ears(g, &d));
    Ok(d)
}

/// Ear decomposition that starts from a prescribed cycle of `g`.
///
/// Ears are grown greedily: take the lexicographically smallest unused edge
/// `uv` with `u` covered; if `v` is covered it is a single-edge ear,
/// otherwise walk a shortest path (BFS, smallest ids first) from `v`
/// through uncovered vertices to a covered vertex other than `u`.
pub fn ear_decompose_from(g: &Graph, base_cycle: &[usize]) -> Result<EarDecomposition> {
    two_connectivity(g).map_err(Error::NotTwoConnected)?;
    let len = base_cycle.len();
    let cycle_ok = len >= 3
        && base_cycle.iter().all(|&v| v < g.order())
        && base_cycle.iter().collect::<VertexSet>().len() == len
        && (0..len).all(|i| g.has_edge(base_cycle[i], base_cycle[(i + 1) % len]));
    if !cycle_ok {
        return Err(Error::Argument(format!("{base_cycle:?} is not a cycle of the graph")));
    }

    let mut used: BTreeSet<(usize, usize)> = (0..len)
        .map(|i| {
            let (u, v) = (base_cycle[i], base_cycle[(i + 1) % len]);
            (u.min(v), u.max(v))
        })
        .collect();
    let mut covered: VertexSet = base_cycle.iter().copied().collect();
    let mut ears = Vec::new();

    loop {
        let next = g
            .edges()
            .find(|&(u, v)| !used.contains(&(u, v)) && (covered.contains(u) || covered.contains(v)));
        let Some((p, q)) = next else { break };
        let (u, v) = if covered.contains(p) { (p, q) } else { (q, p) };
        let ear = if covered.contains(v) {
            Ear { x: u, y: v, internals: Vec::new() }
        } else {
            let free = g.vertices().difference(covered);
            let mut prev = vec![usize::MAX; g.order()];
            let mut queue = std::collections::VecDeque::from([v]);
            let mut seen = VertexSet::singleton(v);
            let mut end = None;
            while let Some(z) = queue.pop_front() {
                if let Some(y) = g.neighbors(z).intersection(covered).without(u).first() {
                    end = Some((z, y));
                    break;
                }
                for w in g.neighbors(z).intersection(free).difference(seen) {
                    seen.insert(w);
                    prev[w] = z;
                    queue.push_back(w);
                }
            }
            let (z, y) = end.ok_or_else(|| {
                Error::Invariant(format!("no ear through {u}-{v} in a 2-connected graph"))
            })?;
            let mut internals = vec![z];
            let mut cur = z;
            while cur != v {
                cur = prev[cur];
                internals.push(cur);
            }
            internals.reverse();
            Ear { x: u, y, internals }
        };
        for w in ear.walk().windows(2) {
            used.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        covered = covered.union(ear.internals.iter().copied().collect());
        ears.push(ear);
    }
    Ok(EarDecomposition { base_cycle: base_cycle.to_vec(), ears })
}

/// Outcome of [`validate_ears`]: empty `defects` means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EarValidation {
    pub defects: Vec<String>,
}

impl EarValidation {
    pub fn is_valid(&self) -> bool {
        self.defects.is_empty()
    }
}

/// Checks that `d` is an ear decomposition of `g` whose parts partition
/// the edge set.
pub fn validate_ears(g: &Graph, d: &EarDecomposition) -> EarValidation {
    let mut defects = Vec::new();
    let n = g.order();
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut covered = VertexSet::EMPTY;
    let mut take_edge = |u: usize, v: usize, what: &str, defects: &mut Vec<String>| {
        if !g.has_edge(u, v) {
            defects.push(format!("{what}: {u}-{v} is not an edge"));
        } else if !used.insert((u.min(v), u.max(v))) {
            defects.push(format!("{what}: edge {u}-{v} used twice"));
        }
    };

    let len = d.base_cycle.len();
    if len < 3 {
        defects.push(format!("base cycle has length {len} < 3"));
    }
    for &v in &d.base_cycle {
        if v >= n {
            defects.push(format!("base cycle vertex {v} out of range"));
        } else if covered.contains(v) {
            defects.push(format!("base cycle repeats vertex {v}"));
        }
        covered.insert(v.min(63));
    }
    if defects.is_empty() {
        for i in 0..len {
            take_edge(d.base_cycle[i], d.base_cycle[(i + 1) % len], "base cycle", &mut defects);
        }
    }

    for (i, ear) in d.ears.iter().enumerate() {
        let what = format!("ear {}", i + 1);
        if ear.x == ear.y {
            defects.push(format!("{what}: endpoints coincide"));
        }
        for end in [ear.x, ear.y] {
            if !covered.contains(end) {
                defects.push(format!("{what}: endpoint {end} not yet covered"));
            }
        }
        let mut ok = true;
        for &v in &ear.internals {
            if v >= n {
                defects.push(format!("{what}: vertex {v} out of range"));
                ok = false;
            } else if covered.contains(v) {
                defects.push(format!("{what}: internal vertex {v} is not fresh"));
                ok = false;
            } else {
                covered.insert(v);
            }
        }
        if ok && ear.x < n && ear.y < n {
            for w in ear.walk().windows(2) {
                take_edge(w[0], w[1], &what, &mut defects);
            }
        }
    }

    if covered != g.vertices() {
        let missing = g.vertices().difference(covered);
        defects.push(format!("vertices {missing:?} not covered"));
    }
    for (u, v) in g.edges() {
        if !used.contains(&(u, v)) {
            defects.push(format!("edge {u}-{v} not covered"));
        }
    }
    EarValidation { defects }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_connectivity_examples() {
        assert!(is_two_connected(&Graph::cycle(3)));
        assert_eq!(two_connectivity(&Graph::path(4)), Err(Connectivity::CutVertex(1)));
        let bowtie =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(two_connectivity(&bowtie), Err(Connectivity::CutVertex(2)));
        assert_eq!(two_connectivity(&Graph::path(2)), Err(Connectivity::TooSmall(2)));
        let two_cycles = Graph::cycle(3).disjoint_union(&Graph::cycle(3)).unwrap();
        assert_eq!(two_connectivity(&two_cycles), Err(Connectivity::Disconnected));
    }

    #[test]
    fn cycle_has_no_ears() {
        let c5 = Graph::cycle(5);
        let d = ear_decompose(&c5).unwrap();
        assert_eq!(d.base_cycle.len(), 5);
        assert!(d.ears.is_empty());
        assert!(validate_ears(&c5, &d).is_valid());
    }

    #[test]
    fn complete_graph_on_four() {
        let k4 = Graph::complete(4);
        let d = ear_decompose(&k4).unwrap();
        assert!((3..=4).contains(&d.base_cycle.len()));
        assert_eq!(d.edge_count(), 6);
        assert!(validate_ears(&k4, &d).is_valid());
        assert_eq!(d.reconstruct().unwrap(), k4);
    }

    #[test]
    fn cut_vertex_is_reported() {
        assert_eq!(
            ear_decompose(&Graph::path(4)),
            Err(Error::NotTwoConnected(Connectivity::CutVertex(1)))
        );
    }

    #[test]
    fn validation_catches_defects() {
        let k4 = Graph::complete(4);
        let mut k4_minus = k4.clone();
        k4_minus.remove_edge(0, 1);
        let d = ear_decompose(&k4_minus).unwrap();
        let v = validate_ears(&k4, &d);
        assert!(!v.is_valid());
        assert!(v.defects.iter().any(|m| m.contains("0-1 not covered")), "{v:?}");

        let c5 = Graph::cycle(5);
        let bad = EarDecomposition { base_cycle: vec![0, 1], ears: vec![] };
        assert!(!validate_ears(&c5, &bad).is_valid());
    }

    #[test]
    fn forced_base_cycle() {
        let k4 = Graph::complete(4);
        let d = ear_decompose_from(&k4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(d.base_cycle, vec![0, 1, 2, 3]);
        assert!(validate_ears(&k4, &d).is_valid());
        assert_eq!(d.ears.len(), 2);
        assert!(ear_decompose_from(&k4, &[0, 1]).is_err());
        let p = Graph::petersen();
        let d = ear_decompose_from(&p, &[0, 1, 2, 3, 4]).unwrap();
        assert!(validate_ears(&p, &d).is_valid());
        assert_eq!(d.reconstruct().unwrap(), p);
    }

    #[test]
    fn stages_grow_to_the_graph() {
        let p = Graph::petersen();
        let d = ear_decompose(&p).unwrap();
        let stages = d.stages(10).unwrap();
        assert_eq!(stages.len(), d.ears.len() + 1);
        let (last, covered) = stages.last().unwrap();
        assert_eq!(last, &p);
        assert_eq!(*covered, p.vertices());
    }

    #[test]
    fn serializes_to_the_documented_shape() {
        let d = ear_decompose(&Graph::complete(4)).unwrap();
        let json = serde_json::to_value(&d).unwrap();
        assert!(json["base_cycle"].is_array());
        assert!(json["ears"][0]["internals"].is_array());
        assert!(json["ears"][0]["x"].is_u64());
    }
}
