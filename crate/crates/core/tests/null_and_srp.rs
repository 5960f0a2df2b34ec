use motif_srp::graph::{aggregate_static, TemporalGraph};
use motif_srp::null_models::{
    ensemble_mean_static, ensemble_mean_temporal, random_directed_gnm, replica_seed,
    shuffle_timestamps,
};
use motif_srp::srp::{delta_ratio, embed_static, embed_temporal, srp_normalize, SrpConfig, Variant};
use motif_srp::static_motifs::{triad_census, TriadCode};
use motif_srp::synthetic::{gen_synthetic_with, EmailParams, FamilyParams};
use motif_srp::temporal_motifs::{count_motifs, count_motifs_bruteforce, TemporalMotifId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_temporal(seed: u64, n: u64, m: usize, span: i64) -> TemporalGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Vec<_> = (0..m)
        .map(|_| {
            let s = rng.gen_range(0..n);
            let d = (s + rng.gen_range(1..n)) % n;
            (s, d, rng.gen_range(0..span))
        })
        .collect();
    TemporalGraph::from_triples("r", triples)
}

fn sorted_pairs(g: &TemporalGraph) -> Vec<(u64, u64)> {
    let mut v: Vec<_> = g.edges().iter().map(|e| (e.src, e.dst)).collect();
    v.sort();
    v
}

fn sorted_times(g: &TemporalGraph) -> Vec<i64> {
    let mut v: Vec<_> = g.edges().iter().map(|e| e.t).collect();
    v.sort();
    v
}

#[test]
fn gnm_arc_inclusion_is_uniform() {
    // 10,000 draws of G(6, 10): each of the 30 slots should be present with
    // probability 1/3; allow three standard errors.
    let samples = 10_000;
    let mut hits = [[0u32; 6]; 6];
    for s in 0..samples {
        let g = random_directed_gnm(6, 10, replica_seed(31, s)).unwrap();
        assert_eq!(g.arc_count(), 10);
        for &(a, b) in g.arcs() {
            hits[a as usize][b as usize] += 1;
        }
    }
    let p = 10.0 / 30.0;
    let se = (p * (1.0 - p) / samples as f64).sqrt();
    for (a, row) in hits.iter().enumerate() {
        for (b, &h) in row.iter().enumerate() {
            if a == b {
                assert_eq!(h, 0);
                continue;
            }
            let freq = h as f64 / samples as f64;
            assert!((freq - p).abs() <= 3.0 * se, "arc ({a},{b}) freq {freq}");
        }
    }
}

#[test]
fn temporal_ensemble_envelope_and_reproducibility() {
    let g = random_temporal(30, 5, 30, 300);
    let (delta, replicas, seed) = (60, 20, 7);
    let stats = ensemble_mean_temporal(&g, delta, replicas, seed).unwrap();
    let rows: Vec<Vec<u64>> = (0..replicas)
        .map(|r| {
            let shuffled = shuffle_timestamps(&g, replica_seed(seed, r));
            count_motifs_bruteforce(&shuffled, delta).unwrap().as_slice().to_vec()
        })
        .collect();
    for k in 0..36 {
        let lo = rows.iter().map(|r| r[k]).min().unwrap() as f64;
        let hi = rows.iter().map(|r| r[k]).max().unwrap() as f64;
        let mean = stats.mean_counts[k];
        assert!(lo <= mean && mean <= hi, "motif {k}: {lo} <= {mean} <= {hi}");
        let direct = rows.iter().map(|r| r[k]).sum::<u64>() as f64 / replicas as f64;
        assert_eq!(mean.to_bits(), direct.to_bits());
    }
    let again = ensemble_mean_temporal(&g, delta, replicas, seed).unwrap();
    assert_eq!(stats, again);
}

#[test]
fn static_ensemble_is_reproducible() {
    let g = random_directed_gnm(8, 15, 1).unwrap();
    let a = ensemble_mean_static(&g, 50, 3).unwrap();
    let b = ensemble_mean_static(&g, 50, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.mean_counts.iter().sum::<f64>(), 56.0);
    let single_thread = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| ensemble_mean_static(&g, 50, 3).unwrap());
    assert_eq!(a, single_thread);
}

#[test]
fn exchangeable_graph_ensemble_equals_observed() {
    let g = TemporalGraph::from_triples("pair", (0..25).map(|i| (4, 8, i * 3)));
    let observed: Vec<f64> = count_motifs(&g, 20).as_slice().iter().map(|&c| c as f64).collect();
    for replicas in [1, 3, 12] {
        let stats = ensemble_mean_temporal(&g, 20, replicas, 5).unwrap();
        assert_eq!(stats.mean_counts, observed);
    }
}

#[test]
fn ping_pong_enriches_alternating_motif() {
    // a->b, b->a alternating at unit gaps
    let g = TemporalGraph::from_triples(
        "pingpong",
        (0..100).map(|i| if i % 2 == 0 { (1, 2, i) } else { (2, 1, i) }),
    );
    let cfg = SrpConfig {
        delta: 5,
        replicas: 10,
        seed: 1,
        variant: Variant::Temporal,
        ..Default::default()
    };
    let v = embed_temporal(&g, &cfg).unwrap();

    // recompute through the brute-force path
    let observed = count_motifs_bruteforce(&g, 5).unwrap();
    let mut null = [0f64; 36];
    for r in 0..10 {
        let shuffled = shuffle_timestamps(&g, replica_seed(1, r));
        for (acc, &c) in null.iter_mut().zip(count_motifs_bruteforce(&shuffled, 5).unwrap().as_slice()) {
            *acc += c as f64;
        }
    }
    let deltas: Vec<f64> = observed
        .as_slice()
        .iter()
        .zip(&null)
        .map(|(&o, &s)| delta_ratio(o as f64, s / 10.0, 4.0))
        .collect();
    let oracle = srp_normalize(&deltas);
    for (a, b) in v.values().iter().zip(oracle.values()) {
        assert!((a - b).abs() < 1e-12);
    }

    let alternating = TemporalMotifId::new(6).unwrap().index();
    let best = (0..36)
        .max_by(|&a, &b| v.values()[a].total_cmp(&v.values()[b]))
        .unwrap();
    assert_eq!(best, alternating, "profile {:?}", v.values());
    assert!(v.values()[alternating] > 0.0);
}

#[test]
fn repeated_cycle_enriches_cyclic_triad() {
    let g = TemporalGraph::from_triples(
        "cycle",
        (0..30).map(|i| match i % 3 {
            0 => (1, 2, i),
            1 => (2, 3, i),
            _ => (3, 1, i),
        }),
    );
    let cfg = SrpConfig {
        replicas: 20,
        seed: 2,
        variant: Variant::Static,
        ..Default::default()
    };
    let v = embed_static(&g, &cfg).unwrap();
    assert_eq!(triad_census(&aggregate_static(&g)).get(TriadCode::T030C), 1);
    assert!(v.values()[TriadCode::T030C.index()] > 0.0);
}

#[test]
fn instant_replies_enrich_ping_pong() {
    let params = FamilyParams::Email(EmailParams {
        p_reply: 1.0,
        max_reply_lag: 1,
        ..Default::default()
    });
    // about one message per second, so short windows hold whole exchanges
    let g = gen_synthetic_with(&params, 20, 600, 300, 12).unwrap();
    // second edge reverses the first: (1,2)(2,1)(*)
    let family = 6..12;
    for delta in [2, 5, 30] {
        let observed = count_motifs_bruteforce(&g, delta).unwrap();
        let null = ensemble_mean_temporal(&g, delta, 10, 3).unwrap();
        let obs: u64 = observed.as_slice()[family.clone()].iter().sum();
        let mean: f64 = null.mean_counts[family.clone()].iter().sum();
        let d = delta_ratio(obs as f64, mean, 4.0);
        assert!(obs > 0);
        assert!(d > 0.0, "delta {delta}: observed {obs}, null {mean}, ratio {d}");
    }
}

#[test]
fn shuffle_keeps_static_structure() {
    for seed in 0..20 {
        let g = random_temporal(seed, 7, 40, 500);
        let s = shuffle_timestamps(&g, seed * 31 + 1);
        assert_eq!(sorted_pairs(&g), sorted_pairs(&s));
        assert_eq!(sorted_times(&g), sorted_times(&s));
        assert_eq!(
            triad_census(&aggregate_static(&g)),
            triad_census(&aggregate_static(&s))
        );
    }
}

proptest! {
    #[test]
    fn shuffle_preserves_multisets(
        raw in prop::collection::vec((0u64..6, 1u64..6, 0i64..50), 0..40),
        seed in any::<u64>(),
    ) {
        let g = TemporalGraph::from_triples("p", raw.into_iter().map(|(s, o, t)| (s, (s + o) % 6, t)));
        let s = shuffle_timestamps(&g, seed);
        prop_assert_eq!(sorted_pairs(&g), sorted_pairs(&s));
        prop_assert_eq!(sorted_times(&g), sorted_times(&s));
        prop_assert_eq!(aggregate_static(&g), aggregate_static(&s));
        for (i, e) in s.edges().iter().enumerate() {
            prop_assert_eq!(e.seq, i as u64);
        }
    }

    #[test]
    fn gnm_is_simple(n in 0usize..15, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let slots = n * n.saturating_sub(1);
        let m = (slots as f64 * frac).floor() as usize;
        let g = random_directed_gnm(n, m, seed).unwrap();
        prop_assert_eq!(g.arc_count(), m);
        prop_assert!(g.arcs().iter().all(|&(a, b)| a != b && (a as usize) < n && (b as usize) < n));
        prop_assert!(g.arcs().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn delta_ratio_bounded_and_antisymmetric(a in 0.0f64..1e9, b in 0.0f64..1e9, eps in 1e-3f64..100.0) {
        let d = delta_ratio(a, b, eps);
        prop_assert!(d > -1.0 && d < 1.0);
        prop_assert_eq!(d, -delta_ratio(b, a, eps));
    }

    #[test]
    fn normalize_is_unit_and_scale_free(
        deltas in prop::collection::vec(-1.0f64..1.0, 1..40),
        scale in 1e-3f64..1e3,
    ) {
        let v = srp_normalize(&deltas);
        let norm = v.norm();
        if deltas.iter().all(|&d| d == 0.0) {
            prop_assert_eq!(norm, 0.0);
        } else {
            prop_assert!((norm - 1.0).abs() < 1e-12);
            let scaled: Vec<f64> = deltas.iter().map(|d| d * scale).collect();
            for (x, y) in v.values().iter().zip(srp_normalize(&scaled).values()) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
        prop_assert!(v.values().iter().all(|x| (-1.0..=1.0).contains(x)));
    }
}
