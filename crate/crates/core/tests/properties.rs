use proptest::prelude::*;
use taupart::blocks::blocks;
use taupart::detour::{detour_order, dfs_detour_order};
use taupart::ear::{ear_decompose, is_two_connected, validate_ears};
use taupart::generate::{random_2connected, random_gnp};
use taupart::multiway::{detour_coloring, t_partition};
use taupart::partition::{brute_force_partition, tau_partition, PartitionTarget};
use taupart::starcolor::{find_bicolored_p4s, star_coloring, verify_proper_coloring};
use taupart::{Graph, VertexSet};

fn tau_of(g: &Graph, set: VertexSet) -> usize {
    if set.is_empty() {
        return 0;
    }
    dfs_detour_order(&g.induced_subgraph(set).unwrap().graph)
}

fn gnp() -> impl Strategy<Value = Graph> {
    (1usize..=10, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| random_gnp(n, p, seed).unwrap())
}

fn two_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (3usize..=max_n, 0usize..=6, any::<u64>())
        .prop_map(|(n, extra, seed)| random_2connected(n, extra, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(n in 0usize..=64, p in 0.0f64..=1.0, seed in any::<u64>()) {
        let g = random_gnp(n, p, seed).unwrap();
        prop_assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }

    #[test]
    fn dp_and_dfs_agree(g in gnp()) {
        let d = detour_order(&g).unwrap();
        prop_assert_eq!(d.tau, dfs_detour_order(&g));
        prop_assert_eq!(d.witness_path.len(), d.tau);
        for w in d.witness_path.windows(2) {
            prop_assert!(g.has_edge(w[0], w[1]));
        }
    }

    #[test]
    fn blocks_partition_the_edges(g in gnp()) {
        let b = blocks(&g);
        for (u, v) in g.edges() {
            let holders = b.blocks.iter().filter(|blk| blk.vertices.contains(u) && blk.vertices.contains(v)).count();
            prop_assert_eq!(holders, 1);
        }
        for v in g.vertices() {
            let comp = g.reachable(v, g.vertices());
            let rest = comp.without(v);
            let splits = rest.first().is_some_and(|s| g.reachable(s, rest) != rest);
            prop_assert_eq!(b.cut_vertices.contains(v), splits, "vertex {}", v);
        }
    }

    #[test]
    fn ear_decompositions_rebuild_the_graph(g in two_connected(16)) {
        prop_assert!(is_two_connected(&g));
        let d = ear_decompose(&g).unwrap();
        prop_assert!(validate_ears(&g, &d).is_valid());
        prop_assert_eq!(d.reconstruct().unwrap(), g);
    }

    #[test]
    fn partitions_meet_their_bounds(g in two_connected(9)) {
        let tau = dfs_detour_order(&g);
        for t in PartitionTarget::all_for(tau) {
            let cert = tau_partition(&g, t).unwrap();
            prop_assert!(cert.part_a.is_disjoint(cert.part_b));
            prop_assert_eq!(cert.part_a.union(cert.part_b), g.vertices());
            prop_assert!(tau_of(&g, cert.part_a) <= t.a);
            prop_assert!(tau_of(&g, cert.part_b) <= t.b);
            for w in &cert.witnesses {
                prop_assert!(w.reproduces().unwrap());
            }
        }
    }

    #[test]
    fn any_graph_is_partitionable(g in gnp()) {
        let tau = dfs_detour_order(&g);
        for t in PartitionTarget::all_for(tau) {
            prop_assert!(brute_force_partition(&g, t).unwrap().is_some());
            let cert = tau_partition(&g, t).unwrap();
            prop_assert!(tau_of(&g, cert.part_a) <= t.a && tau_of(&g, cert.part_b) <= t.b);
        }
    }

    #[test]
    fn tuple_partitions_meet_every_bound(g in gnp(), cuts in proptest::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let tau = dfs_detour_order(&g);
        let mut points: Vec<usize> = cuts.iter().map(|i| i.index(tau.max(1))).filter(|&c| c > 0).collect();
        points.sort_unstable();
        points.dedup();
        points.push(tau);
        let mut tuple = Vec::new();
        let mut prev = 0;
        for c in points {
            tuple.push(c - prev);
            prev = c;
        }
        let tp = t_partition(&g, &tuple).unwrap();
        let mut seen = VertexSet::EMPTY;
        for (i, &p) in tp.parts.iter().enumerate() {
            prop_assert!(seen.is_disjoint(p));
            seen = seen.union(p);
            prop_assert!(tau_of(&g, p) <= tuple[i]);
        }
        prop_assert_eq!(seen, g.vertices());
    }

    #[test]
    fn detour_colourings_within_bound(g in gnp(), n in 1usize..=6) {
        let tau = dfs_detour_order(&g);
        let cert = detour_coloring(&g, n).unwrap();
        prop_assert!(cert.colors_used <= tau.div_ceil(n));
        let k = cert.colors.iter().max().unwrap() + 1;
        for c in 0..k {
            let class: VertexSet = (0..g.order()).filter(|&v| cert.colors[v] == c).collect();
            prop_assert!(tau_of(&g, class) <= n);
        }
    }

    #[test]
    fn star_colourings_within_tau(g in gnp()) {
        let tau = dfs_detour_order(&g);
        let sc = star_coloring(&g).unwrap();
        let colors = &sc.certificate.colors;
        prop_assert!(sc.certificate.colors_used <= tau);
        prop_assert!(verify_proper_coloring(&g, colors));
        prop_assert!(find_bicolored_p4s(&g, colors).is_empty());
    }

    #[test]
    fn relabelling_keeps_tau(g in gnp(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(detour_order(&h).unwrap().tau, detour_order(&g).unwrap().tau);
    }
}
