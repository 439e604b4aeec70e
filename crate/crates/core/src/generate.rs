//! Seeded random graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

/// A random 2-connected graph on exactly `n` vertices, built as a cycle
/// plus ears so that 2-connectivity holds by construction.
///
/// A base cycle of random length in `3..=n` is extended by ears with at
/// least one fresh vertex until the order reaches `n`; then up to
/// `extra_ears` chords (single-edge ears) are added between random
/// non-adjacent pairs. Vertex ids are shuffled at the end.
pub fn random_2connected(n: usize, extra_ears: usize, seed: u64) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Argument(format!("a 2-connected graph needs n >= 3, got {n}")));
    }
    if n > MAX_ORDER {
        return Err(Error::capacity("graph order", n, MAX_ORDER));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::cycle(rng.gen_range(3..=n));
    while g.order() < n {
        let r = rng.gen_range(1..=n - g.order());
        let x = rng.gen_range(0..g.order());
        let mut y = rng.gen_range(0..g.order() - 1);
        if y >= x {
            y += 1;
        }
        g = g.add_ear(x, y, r)?;
    }
    for _ in 0..extra_ears {
        let non_edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        let Some(&(x, y)) = non_edges.choose(&mut rng) else { break };
        g = g.add_ear(x, y, 0)?;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    g.relabel(&perm)
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Argument(format!("edge probability {p} outside [0, 1]")));
    }
    let mut g = Graph::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ear::is_two_connected;

    #[test]
    fn smallest_case_is_a_triangle() {
        for seed in 0..5 {
            assert_eq!(random_2connected(3, 0, seed).unwrap(), Graph::cycle(3));
        }
    }

    #[test]
    fn output_is_two_connected_and_deterministic() {
        let g = random_2connected(8, 3, 1).unwrap();
        assert!(is_two_connected(&g));
        assert_eq!(g.order(), 8);
        assert_eq!(g, random_2connected(8, 3, 1).unwrap());
    }

    #[test]
    fn rejects_small_orders() {
        assert!(matches!(random_2connected(2, 0, 0), Err(Error::Argument(_))));
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(random_gnp(6, 0.0, 3).unwrap().size(), 0);
        assert_eq!(random_gnp(6, 1.0, 3).unwrap(), Graph::complete(6));
        assert!(random_gnp(6, 1.5, 3).is_err());
    }
}
