//! Three-edge temporal motifs on at most three nodes.
//!
//! A motif instance is any subsequence `i1 < i2 < i3` of the `(t, seq)`
//! ordered edge list with `t(i3) - t(i1) <= delta` whose edges span at most
//! three nodes. Other edges may interleave. Nodes are relabelled `1, 2, 3`
//! in order of first appearance, so the first edge is always `(1,2)` and a
//! motif is fixed by the canonical second and third edges drawn from
//! [`CANONICAL_EDGES`]. The id is `6 * idx(second) + idx(third)`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{TemporalGraph, Timestamp};

pub const MOTIF_COUNT: usize = 36;

/// Largest edge count the brute-force counter will enumerate.
pub const BRUTEFORCE_EDGE_LIMIT: usize = 2000;

/// Canonical edge order used by the motif encoding.
pub const CANONICAL_EDGES: [(u8, u8); 6] = [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TemporalMotifId(u8);

impl TemporalMotifId {
    pub fn new(id: usize) -> Option<Self> {
        (id < MOTIF_COUNT).then_some(TemporalMotifId(id as u8))
    }

    /// From the canonical-edge indices of the second and third edges.
    pub fn from_edge_indices(second: usize, third: usize) -> Option<Self> {
        if second < 6 && third < 6 {
            Some(TemporalMotifId((6 * second + third) as u8))
        } else {
            None
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn edge_indices(self) -> (usize, usize) {
        (self.index() / 6, self.index() % 6)
    }

    /// The three canonical edges of this motif.
    pub fn pattern(self) -> [(u8, u8); 3] {
        let (a, b) = self.edge_indices();
        [CANONICAL_EDGES[0], CANONICAL_EDGES[a], CANONICAL_EDGES[b]]
    }

    /// Distinct nodes in the pattern (2 or 3).
    pub fn node_count(self) -> usize {
        let (a, b) = self.edge_indices();
        if a < 2 && b < 2 {
            2
        } else {
            3
        }
    }

    pub fn all() -> impl Iterator<Item = TemporalMotifId> {
        (0..MOTIF_COUNT as u8).map(TemporalMotifId)
    }
}

/// Renders as `(1,2)(2,1)(1,2)`.
impl fmt::Display for TemporalMotifId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.pattern() {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// Motif id of three temporally ordered edges, or `None` when they span
/// more than three nodes.
pub fn motif_id<N: Copy + Eq + fmt::Debug>(
    e1: (N, N),
    e2: (N, N),
    e3: (N, N),
) -> Result<Option<TemporalMotifId>> {
    for e in [e1, e2, e3] {
        if e.0 == e.1 {
            return Err(Error::InvalidInput(format!(
                "self-loop {:?} has no temporal motif",
                e
            )));
        }
    }
    let mut labels: Vec<N> = Vec::with_capacity(4);
    let mut label = |x: N| -> u8 {
        match labels.iter().position(|&y| y == x) {
            Some(i) => i as u8 + 1,
            None => {
                labels.push(x);
                labels.len() as u8
            }
        }
    };
    let mut canon = [(0u8, 0u8); 3];
    for (slot, e) in canon.iter_mut().zip([e1, e2, e3]) {
        let a = label(e.0);
        let b = label(e.1);
        *slot = (a, b);
    }
    if labels.len() > 3 {
        return Ok(None);
    }
    let idx = |p: (u8, u8)| CANONICAL_EDGES.iter().position(|&c| c == p);
    debug_assert_eq!(canon[0], (1, 2));
    Ok(match (idx(canon[1]), idx(canon[2])) {
        (Some(a), Some(b)) => TemporalMotifId::from_edge_indices(a, b),
        _ => None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalCounts {
    counts: [u64; MOTIF_COUNT],
    delta: Timestamp,
}

impl TemporalCounts {
    pub fn zeros(delta: Timestamp) -> Self {
        TemporalCounts {
            counts: [0; MOTIF_COUNT],
            delta,
        }
    }

    pub fn from_array(counts: [u64; MOTIF_COUNT], delta: Timestamp) -> Self {
        TemporalCounts { counts, delta }
    }

    pub fn delta(&self) -> Timestamp {
        self.delta
    }

    pub fn get(&self, id: TemporalMotifId) -> u64 {
        self.counts[id.index()]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Per-chunk working state of the windowed counter.
struct WindowScratch {
    /// Counts indexed `[role of second edge][role of third edge]`.
    counts: [[u64; 6]; 6],
    /// Earlier in-window edges on the first edge's node pair, by role.
    pair_seen: [u64; 2],
    /// Earlier in-window edges touching a third node, by role, summed over nodes.
    third_seen: [u64; 4],
    /// Same, per third node.
    third_by_node: Vec<[u64; 4]>,
    touched: Vec<u32>,
}

impl WindowScratch {
    fn new(n: usize) -> Self {
        WindowScratch {
            counts: [[0; 6]; 6],
            pair_seen: [0; 2],
            third_seen: [0; 4],
            third_by_node: vec![[0; 4]; n],
            touched: Vec::new(),
        }
    }

    fn observe(&mut self, role: usize, third: u32) {
        for r2 in 0..2 {
            self.counts[r2][role] += self.pair_seen[r2];
        }
        if role < 2 {
            for r2 in 2..6 {
                self.counts[r2][role] += self.third_seen[r2 - 2];
            }
            self.pair_seen[role] += 1;
        } else {
            let per_node = &mut self.third_by_node[third as usize];
            for r2 in 2..6 {
                self.counts[r2][role] += per_node[r2 - 2];
            }
            if per_node.iter().all(|&c| c == 0) {
                self.touched.push(third);
            }
            per_node[role - 2] += 1;
            self.third_seen[role - 2] += 1;
        }
    }

    fn reset_window(&mut self) {
        self.pair_seen = [0; 2];
        self.third_seen = [0; 4];
        for w in self.touched.drain(..) {
            self.third_by_node[w as usize] = [0; 4];
        }
    }
}

/// Role of edge `(s, d)` relative to a first edge `(u, v)`, as an index into
/// [`CANONICAL_EDGES`], together with the third node it touches (if any).
/// `None` for edges sharing no node with `{u, v}`.
fn edge_role(u: u32, v: u32, s: u32, d: u32) -> Option<(usize, u32)> {
    match (s, d) {
        _ if s == u && d == v => Some((0, 0)),
        _ if s == v && d == u => Some((1, 0)),
        _ if s == u => Some((2, d)),
        _ if d == u => Some((3, s)),
        _ if s == v => Some((4, d)),
        _ if d == v => Some((5, s)),
        _ => None,
    }
}

const CHUNK: usize = 2048;

/// Counts all 36 motifs with a `delta` window.
///
/// Every edge is taken in turn as the first edge of an instance. The edges
/// that can follow it are those incident to one of its endpoints, later in
/// the order and no more than `delta` later in time; they are read by
/// merging the two endpoint incidence lists. A single pass over them in
/// order, tracking how many earlier candidates have each role (and, for
/// edges reaching a third node, how many reach that same node), credits every
/// valid (second, third) pair. Self-loop edges never take part. First edges
/// are processed in parallel chunks and the integer totals summed, so the
/// result does not depend on the thread count.
pub fn count_motifs(g: &TemporalGraph, delta: Timestamp) -> TemporalCounts {
    let edges = g.dense_edges();
    let n = g.node_count();
    if edges.len() < 3 {
        return TemporalCounts::zeros(delta);
    }

    let mut incident: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, &(s, d, _)) in edges.iter().enumerate() {
        if s != d {
            incident[s as usize].push(i as u32);
            incident[d as usize].push(i as u32);
        }
    }

    let starts: Vec<usize> = (0..edges.len()).step_by(CHUNK).collect();
    let per_chunk: Vec<[[u64; 6]; 6]> = starts
        .par_iter()
        .map(|&lo| {
            let hi = (lo + CHUNK).min(edges.len());
            let mut scratch = WindowScratch::new(n);
            for first in lo..hi {
                scan_following(&edges, &incident, first, delta, &mut scratch);
            }
            scratch.counts
        })
        .collect();

    let mut counts = [0u64; MOTIF_COUNT];
    for grid in &per_chunk {
        for (r2, row) in grid.iter().enumerate() {
            for (r3, &c) in row.iter().enumerate() {
                counts[6 * r2 + r3] += c;
            }
        }
    }
    TemporalCounts { counts, delta }
}

fn scan_following(
    edges: &[(u32, u32, Timestamp)],
    incident: &[Vec<u32>],
    first: usize,
    delta: Timestamp,
    scratch: &mut WindowScratch,
) {
    let (u, v, t1) = edges[first];
    if u == v {
        return;
    }
    let limit = t1.saturating_add(delta);
    let a = &incident[u as usize];
    let b = &incident[v as usize];
    let mut pa = a.partition_point(|&j| j as usize <= first);
    let mut pb = b.partition_point(|&j| j as usize <= first);
    loop {
        let next = match (a.get(pa), b.get(pb)) {
            (Some(&x), Some(&y)) if x == y => {
                pa += 1;
                pb += 1;
                x
            }
            (Some(&x), Some(&y)) if x < y => {
                pa += 1;
                x
            }
            (_, Some(&y)) => {
                pb += 1;
                y
            }
            (Some(&x), None) => {
                pa += 1;
                x
            }
            (None, None) => break,
        };
        let (s, d, t) = edges[next as usize];
        if t > limit {
            break;
        }
        if let Some((role, third)) = edge_role(u, v, s, d) {
            scratch.observe(role, third);
        }
    }
    scratch.reset_window();
}

/// Counts motifs by enumerating every edge triple inside the window.
/// Refuses graphs with more than [`BRUTEFORCE_EDGE_LIMIT`] edges.
pub fn count_motifs_bruteforce(g: &TemporalGraph, delta: Timestamp) -> Result<TemporalCounts> {
    let edges = g.edges();
    if edges.len() > BRUTEFORCE_EDGE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "brute-force temporal motif count",
            size: edges.len(),
            limit: BRUTEFORCE_EDGE_LIMIT,
        });
    }
    let mut counts = [0u64; MOTIF_COUNT];
    for (i, e1) in edges.iter().enumerate() {
        let limit = e1.t.saturating_add(delta);
        for (j, e2) in edges.iter().enumerate().skip(i + 1) {
            if e2.t > limit {
                break;
            }
            for e3 in &edges[j + 1..] {
                if e3.t > limit {
                    break;
                }
                if e1.is_self_loop() || e2.is_self_loop() || e3.is_self_loop() {
                    continue;
                }
                if let Some(id) = motif_id((e1.src, e1.dst), (e2.src, e2.dst), (e3.src, e3.dst))? {
                    counts[id.index()] += 1;
                }
            }
        }
    }
    Ok(TemporalCounts { counts, delta })
}
