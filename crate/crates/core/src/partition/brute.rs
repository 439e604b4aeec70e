use itertools::Itertools;

use super::{Bipartition, PartitionTarget};
use crate::detour::{detour_order, InducedDetourTable};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default order limit for exhaustive searches.
pub const DEFAULT_MAX_N: usize = 20;

/// Exhaustive `(a, b)`-partition search.
///
/// Candidate parts `A` are tried by increasing size, lexicographically
/// within a size; the first `A` with `τ⟨A⟩ <= a` and `τ⟨V \ A⟩ <= b` wins.
/// `None` means no such partition exists.
pub fn brute_force_partition(g: &Graph, t: PartitionTarget) -> Result<Option<Bipartition>> {
    brute_force_partition_capped(g, t, DEFAULT_MAX_N)
}

pub fn brute_force_partition_capped(
    g: &Graph,
    t: PartitionTarget,
    max_n: usize,
) -> Result<Option<Bipartition>> {
    let n = g.order();
    if n > max_n {
        return Err(Error::capacity("exhaustive partition search", n, max_n));
    }
    let tau = detour_order(g)?.tau;
    t.check(tau)?;
    let table = InducedDetourTable::new(g)?;
    let all = g.vertices();
    for k in 0..=n {
        for members in (0..n).combinations(k) {
            let a: VertexSet = members.into_iter().collect();
            if table.tau(a) <= t.a {
                let b = all.difference(a);
                if table.tau(b) <= t.b {
                    return Ok(Some(Bipartition { a, b }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detour::tau_of_set;

    #[test]
    fn finds_partitions_of_small_graphs() {
        let c6 = Graph::cycle(6);
        let p = brute_force_partition(&c6, PartitionTarget { a: 2, b: 4 }).unwrap().unwrap();
        assert!(tau_of_set(&c6, p.a).unwrap() <= 2 && tau_of_set(&c6, p.b).unwrap() <= 4);
        assert_eq!(p.a.len() + p.b.len(), 6);

        let k3 = Graph::complete(3);
        let p = brute_force_partition(&k3, PartitionTarget { a: 1, b: 2 }).unwrap().unwrap();
        assert_eq!(p.a.to_vec(), vec![0]);
    }

    #[test]
    fn target_must_sum_to_tau() {
        let k3 = Graph::complete(3);
        assert_eq!(
            brute_force_partition(&k3, PartitionTarget { a: 1, b: 1 }),
            Err(Error::Target { a: 1, b: 1, tau: 3 })
        );
    }

    #[test]
    fn capacity() {
        let g = Graph::cycle(21);
        assert!(matches!(
            brute_force_partition(&g, PartitionTarget { a: 10, b: 11 }),
            Err(Error::Capacity { .. })
        ));
    }
}
