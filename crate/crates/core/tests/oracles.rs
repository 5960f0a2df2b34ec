//! Fast counters against their brute-force oracles, plus the structural
//! invariants of both motif families.

use motif_srp::graph::{aggregate_static, StaticDigraph, TemporalGraph};
use motif_srp::static_motifs::{choose3, triad_census, triad_census_bruteforce, TriadCode};
use motif_srp::temporal_motifs::{count_motifs, count_motifs_bruteforce};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_temporal(rng: &mut ChaCha8Rng, max_nodes: u64, max_edges: usize) -> TemporalGraph {
    let n = rng.gen_range(2..=max_nodes);
    let m = rng.gen_range(0..=max_edges);
    let span = rng.gen_range(1..200);
    let triples: Vec<_> = (0..m)
        .map(|_| {
            let s = rng.gen_range(0..n);
            let mut d = rng.gen_range(0..n);
            while d == s {
                d = rng.gen_range(0..n);
            }
            (s * 7 + 3, d * 7 + 3, rng.gen_range(0..span))
        })
        .collect();
    TemporalGraph::from_triples("r", triples)
}

fn random_digraph(rng: &mut ChaCha8Rng, max_nodes: usize) -> StaticDigraph {
    let n = rng.gen_range(0..=max_nodes);
    let p: f64 = rng.gen_range(0.0..1.0);
    let mut arcs = Vec::new();
    for a in 0..n as u32 {
        for b in 0..n as u32 {
            if a != b && rng.gen_bool(p) {
                arcs.push((a, b));
            }
        }
    }
    StaticDigraph::new(n, arcs).unwrap()
}

/// Number of index triples i < j < k spanning at most three nodes,
/// counted without any motif machinery.
fn spanning_triples(g: &TemporalGraph) -> u64 {
    let e = g.edges();
    let mut total = 0;
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            for k in j + 1..e.len() {
                let mut nodes = vec![e[i].src, e[i].dst, e[j].src, e[j].dst, e[k].src, e[k].dst];
                nodes.sort();
                nodes.dedup();
                if nodes.len() <= 3 {
                    total += 1;
                }
            }
        }
    }
    total
}

#[test]
fn temporal_fast_matches_bruteforce_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..300 {
        let g = random_temporal(&mut rng, 10, 60);
        let span = g.time_span().map_or(0, |(a, b)| b - a);
        let delta = rng.gen_range(0..=span + 1);
        assert_eq!(
            count_motifs(&g, delta),
            count_motifs_bruteforce(&g, delta).unwrap(),
            "case {case}, delta {delta}"
        );
    }
}

#[test]
fn temporal_fifty_edges_six_nodes() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let triples: Vec<_> = (0..50)
        .map(|_| {
            let s = rng.gen_range(0..6u64);
            let d = (s + rng.gen_range(1..6u64)) % 6;
            (s, d, rng.gen_range(0..1000i64))
        })
        .collect();
    let g = TemporalGraph::from_triples("g50", triples);
    let (lo, hi) = g.time_span().unwrap();
    let delta = (hi - lo) / 2;
    let oracle = count_motifs_bruteforce(&g, delta).unwrap();
    assert!(oracle.total() > 0);
    assert_eq!(count_motifs(&g, delta), oracle);
}

#[test]
fn full_window_counts_every_spanning_triple() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..60 {
        let g = random_temporal(&mut rng, 6, 25);
        let span = g.time_span().map_or(0, |(a, b)| b - a);
        assert_eq!(count_motifs(&g, span).total(), spanning_triples(&g));
    }
}

#[test]
fn static_fast_matches_bruteforce_on_random_digraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..200 {
        let g = random_digraph(&mut rng, 12);
        let fast = triad_census(&g);
        assert_eq!(fast, triad_census_bruteforce(&g).unwrap(), "case {case}");
        assert_eq!(fast.total(), choose3(g.node_count()));
    }
}

#[test]
fn static_seeded_n8_m15() {
    let g = motif_srp::random_directed_gnm(8, 15, 8015).unwrap();
    let fast = triad_census(&g);
    assert_eq!(fast, triad_census_bruteforce(&g).unwrap());
    assert_eq!(fast.total(), 56);
}

#[test]
fn census_survives_large_sparse_graphs() {
    let g = motif_srp::random_directed_gnm(150, 600, 5).unwrap();
    assert_eq!(triad_census(&g), triad_census_bruteforce(&g).unwrap());
}

fn arb_temporal() -> impl Strategy<Value = TemporalGraph> {
    prop::collection::vec((0u64..8, 1u64..8, 0i64..100), 0..40).prop_map(|raw| {
        let triples = raw.into_iter().map(|(s, off, t)| (s, (s + off) % 8, t));
        TemporalGraph::from_triples("p", triples)
    })
}

fn arb_digraph() -> impl Strategy<Value = StaticDigraph> {
    (0usize..10).prop_flat_map(|n| {
        let slots = n * n.saturating_sub(1);
        prop::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let mut arcs = Vec::new();
            let mut k = 0;
            for a in 0..n as u32 {
                for b in 0..n as u32 {
                    if a != b {
                        if bits[k] {
                            arcs.push((a, b));
                        }
                        k += 1;
                    }
                }
            }
            StaticDigraph::new(n, arcs).unwrap()
        })
    })
}

fn relabel(g: &TemporalGraph, perm: &[u64]) -> TemporalGraph {
    let triples = g
        .edges()
        .iter()
        .map(|e| (perm[e.src as usize] + 100, perm[e.dst as usize] + 100, e.t));
    TemporalGraph::from_triples("perm", triples)
}

proptest! {
    #[test]
    fn counts_monotone_in_delta(g in arb_temporal(), d1 in 0i64..60, extra in 0i64..60) {
        let small = count_motifs(&g, d1);
        let large = count_motifs(&g, d1 + extra);
        for (a, b) in small.as_slice().iter().zip(large.as_slice()) {
            prop_assert!(a <= b);
        }
    }

    #[test]
    fn counts_shift_invariant(g in arb_temporal(), shift in -1000i64..1000, delta in 0i64..50) {
        let shifted = TemporalGraph::from_triples(
            "s",
            g.edges().iter().map(|e| (e.src, e.dst, e.t + shift)),
        );
        prop_assert_eq!(count_motifs(&g, delta), count_motifs(&shifted, delta));
    }

    #[test]
    fn counts_relabel_invariant(
        g in arb_temporal(),
        perm in Just((0..8u64).collect::<Vec<_>>()).prop_shuffle(),
        delta in 0i64..50,
    ) {
        prop_assert_eq!(count_motifs(&g, delta), count_motifs(&relabel(&g, &perm), delta));
    }

    #[test]
    fn census_sums_to_triples(g in arb_digraph()) {
        prop_assert_eq!(triad_census(&g).total(), choose3(g.node_count()));
    }

    #[test]
    fn census_relabel_invariant(g in arb_digraph(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let n = g.node_count();
        let mut perm: Vec<u32> = (0..n as u32).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let arcs = g.arcs().iter().map(|&(a, b)| (perm[a as usize], perm[b as usize])).collect();
        let permuted = StaticDigraph::new(n, arcs).unwrap();
        prop_assert_eq!(triad_census(&g), triad_census(&permuted));
    }

    #[test]
    fn census_reversal_swaps_up_and_down(g in arb_digraph()) {
        let fwd = triad_census(&g);
        let rev = triad_census(&g.reversed());
        for code in TriadCode::ALL {
            prop_assert_eq!(fwd.get(code), rev.get(code.reversed()));
        }
    }

    #[test]
    fn aggregation_ignores_duplicates(g in arb_temporal(), pick in any::<prop::sample::Index>()) {
        prop_assume!(!g.is_empty());
        let dup = g.edges()[pick.index(g.edge_count())];
        let mut triples: Vec<_> = g.edges().iter().map(|e| (e.src, e.dst, e.t)).collect();
        triples.push((dup.src, dup.dst, dup.t + 5));
        let doubled = TemporalGraph::from_triples("d", triples);
        prop_assert_eq!(aggregate_static(&g), aggregate_static(&doubled));
    }
}
