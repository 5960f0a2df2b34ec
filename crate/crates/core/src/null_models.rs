//! Null-model ensembles: time-shuffled temporal graphs and uniform `G(n, m)`
//! digraphs, with mean motif counts over replicas.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{StaticDigraph, TemporalEdge, TemporalGraph, Timestamp};
use crate::static_motifs::triad_census;
use crate::temporal_motifs::count_motifs;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleStats {
    pub mean_counts: Vec<f64>,
    pub replicas: usize,
    pub seed: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of replica `replica` under master seed `seed`.
pub fn replica_seed(seed: u64, replica: usize) -> u64 {
    splitmix64(splitmix64(seed) ^ splitmix64(replica as u64).rotate_left(17))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniformly permutes timestamps across edges, keeping each edge's
/// endpoints. Output is re-sorted by `(t, seq)` and then renumbered so
/// `seq` is again the position in the edge list.
pub fn shuffle_timestamps(g: &TemporalGraph, seed: u64) -> TemporalGraph {
    let mut times: Vec<Timestamp> = g.edges().iter().map(|e| e.t).collect();
    times.shuffle(&mut rng(seed));
    let mut edges: Vec<TemporalEdge> = g
        .edges()
        .iter()
        .zip(times)
        .map(|(e, t)| TemporalEdge { t, ..*e })
        .collect();
    edges.sort_unstable_by_key(|e| (e.t, e.seq));
    for (i, e) in edges.iter_mut().enumerate() {
        e.seq = i as u64;
    }
    TemporalGraph::from_parts(g.id(), g.nodes().iter().copied(), edges)
        .expect("renumbered ordinals are unique")
}

/// Uniformly random simple digraph with `n` nodes and exactly `m` arcs.
pub fn random_directed_gnm(n: usize, m: usize, seed: u64) -> Result<StaticDigraph> {
    let slots = n * n.saturating_sub(1);
    if m > slots {
        return Err(Error::Infeasible(format!(
            "{m} arcs do not fit in a simple digraph on {n} nodes (max {slots})"
        )));
    }
    // slot k = a * (n - 1) + r, where r indexes the targets b != a
    let arcs = index::sample(&mut rng(seed), slots, m)
        .into_iter()
        .map(|k| {
            let a = k / (n - 1);
            let r = k % (n - 1);
            let b = if r >= a { r + 1 } else { r };
            (a as u32, b as u32)
        })
        .collect();
    StaticDigraph::new(n, arcs)
}

fn check_replicas(replicas: usize) -> Result<()> {
    if replicas == 0 {
        return Err(Error::InvalidInput("ensemble needs at least one replica".into()));
    }
    Ok(())
}

/// Sums per-replica counts in replica order, then divides.
fn mean_of(rows: &[Vec<u64>], width: usize) -> Vec<f64> {
    let mut sums = vec![0u64; width];
    for row in rows {
        for (s, &c) in sums.iter_mut().zip(row) {
            *s += c;
        }
    }
    sums.into_iter()
        .map(|s| s as f64 / rows.len() as f64)
        .collect()
}

/// Mean temporal motif counts over `replicas` time-shuffled copies of `g`.
pub fn ensemble_mean_temporal(
    g: &TemporalGraph,
    delta: Timestamp,
    replicas: usize,
    seed: u64,
) -> Result<EnsembleStats> {
    check_replicas(replicas)?;
    let rows: Vec<Vec<u64>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let shuffled = shuffle_timestamps(g, replica_seed(seed, r));
            count_motifs(&shuffled, delta).as_slice().to_vec()
        })
        .collect();
    Ok(EnsembleStats {
        mean_counts: mean_of(&rows, 36),
        replicas,
        seed,
    })
}

/// Mean triad census over `replicas` draws of `G(n, m)` matched to `g`.
pub fn ensemble_mean_static(g: &StaticDigraph, replicas: usize, seed: u64) -> Result<EnsembleStats> {
    check_replicas(replicas)?;
    let (n, m) = (g.node_count(), g.arc_count());
    let rows: Vec<Vec<u64>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let sample = random_directed_gnm(n, m, replica_seed(seed, r))?;
            Ok(triad_census(&sample).as_slice().to_vec())
        })
        .collect::<Result<_>>()?;
    Ok(EnsembleStats {
        mean_counts: mean_of(&rows, 16),
        replicas,
        seed,
    })
}
