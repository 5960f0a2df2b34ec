//! Directed triad classification and the 16-class triad census.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::StaticDigraph;

/// Largest digraph the brute-force census will enumerate.
pub const BRUTEFORCE_NODE_LIMIT: usize = 200;

/// Isomorphism classes of 3-node digraphs, in census order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum TriadCode {
    T003 = 0,
    T012,
    T102,
    T021D,
    T021U,
    T021C,
    T111D,
    T111U,
    T030T,
    T030C,
    T201,
    T120D,
    T120U,
    T120C,
    T210,
    T300,
}

impl TriadCode {
    pub const COUNT: usize = 16;

    pub const ALL: [TriadCode; 16] = [
        TriadCode::T003,
        TriadCode::T012,
        TriadCode::T102,
        TriadCode::T021D,
        TriadCode::T021U,
        TriadCode::T021C,
        TriadCode::T111D,
        TriadCode::T111U,
        TriadCode::T030T,
        TriadCode::T030C,
        TriadCode::T201,
        TriadCode::T120D,
        TriadCode::T120U,
        TriadCode::T120C,
        TriadCode::T210,
        TriadCode::T300,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    pub fn mnemonic(self) -> &'static str {
        match self {
            TriadCode::T003 => "003",
            TriadCode::T012 => "012",
            TriadCode::T102 => "102",
            TriadCode::T021D => "021D",
            TriadCode::T021U => "021U",
            TriadCode::T021C => "021C",
            TriadCode::T111D => "111D",
            TriadCode::T111U => "111U",
            TriadCode::T030T => "030T",
            TriadCode::T030C => "030C",
            TriadCode::T201 => "201",
            TriadCode::T120D => "120D",
            TriadCode::T120U => "120U",
            TriadCode::T120C => "120C",
            TriadCode::T210 => "210",
            TriadCode::T300 => "300",
        }
    }

    pub fn from_mnemonic(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.mnemonic() == s)
    }

    /// Class of the triad obtained by reversing every arc.
    pub fn reversed(self) -> Self {
        match self {
            TriadCode::T021D => TriadCode::T021U,
            TriadCode::T021U => TriadCode::T021D,
            TriadCode::T111D => TriadCode::T111U,
            TriadCode::T111U => TriadCode::T111D,
            TriadCode::T120D => TriadCode::T120U,
            TriadCode::T120U => TriadCode::T120D,
            other => other,
        }
    }
}

impl fmt::Display for TriadCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.mnemonic())
    }
}

/// Arc presence among three labelled nodes `0, 1, 2`, one bit per ordered
/// pair in the order `0→1, 1→0, 0→2, 2→0, 1→2, 2→1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TriadArcs(u8);

const PAIRS: [(usize, usize); 6] = [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)];

impl TriadArcs {
    pub fn from_bits(bits: u8) -> Self {
        TriadArcs(bits & 0x3f)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn from_fn(mut has_arc: impl FnMut(usize, usize) -> bool) -> Self {
        let mut bits = 0u8;
        for (i, &(a, b)) in PAIRS.iter().enumerate() {
            if has_arc(a, b) {
                bits |= 1 << i;
            }
        }
        TriadArcs(bits)
    }

    pub fn has(self, a: usize, b: usize) -> bool {
        PAIRS
            .iter()
            .position(|&p| p == (a, b))
            .is_some_and(|i| self.0 & (1 << i) != 0)
    }
}

/// Classifies a 3-node digraph by its mutual/asymmetric/null dyad counts,
/// then by the orientation of its asymmetric arcs.
pub fn triad_code(arcs: TriadArcs) -> TriadCode {
    let mut mutual = Vec::with_capacity(3);
    let mut asym = Vec::with_capacity(3);
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        match (arcs.has(a, b), arcs.has(b, a)) {
            (true, true) => mutual.push((a, b)),
            (true, false) => asym.push((a, b)),
            (false, true) => asym.push((b, a)),
            (false, false) => {}
        }
    }
    let out_deg = |x: usize| asym.iter().filter(|&&(s, _)| s == x).count();
    let in_deg = |x: usize| asym.iter().filter(|&&(_, d)| d == x).count();
    // node outside the single mutual dyad, when there is one
    let apex = || {
        let (a, b) = mutual[0];
        3 - a - b
    };

    match (mutual.len(), asym.len()) {
        (0, 0) => TriadCode::T003,
        (0, 1) => TriadCode::T012,
        (1, 0) => TriadCode::T102,
        (0, 2) => {
            if (0..3).any(|x| out_deg(x) == 2) {
                TriadCode::T021D
            } else if (0..3).any(|x| in_deg(x) == 2) {
                TriadCode::T021U
            } else {
                TriadCode::T021C
            }
        }
        (1, 1) => {
            if asym[0].0 == apex() {
                TriadCode::T111D
            } else {
                TriadCode::T111U
            }
        }
        (0, 3) => {
            if (0..3).all(|x| out_deg(x) == 1) {
                TriadCode::T030C
            } else {
                TriadCode::T030T
            }
        }
        (2, 0) => TriadCode::T201,
        (1, 2) => {
            let x = apex();
            if out_deg(x) == 2 {
                TriadCode::T120D
            } else if in_deg(x) == 2 {
                TriadCode::T120U
            } else {
                TriadCode::T120C
            }
        }
        (2, 1) => TriadCode::T210,
        (3, 0) => TriadCode::T300,
        _ => unreachable!("three dyads"),
    }
}

/// Census counts indexed by [`TriadCode`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StaticCounts {
    counts: [u64; 16],
}

impl StaticCounts {
    pub fn from_array(counts: [u64; 16]) -> Self {
        StaticCounts { counts }
    }

    pub fn get(&self, code: TriadCode) -> u64 {
        self.counts[code.index()]
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn bump(&mut self, code: TriadCode, by: u64) {
        self.counts[code.index()] += by;
    }
}

pub fn choose3(n: usize) -> u64 {
    if n < 3 {
        return 0;
    }
    let n = n as u64;
    n * (n - 1) * (n - 2) / 6
}

/// Undirected neighbourhoods, sorted and distinct, each entry tagged with
/// direction bits (1 = outgoing, 2 = incoming).
fn tagged_neighbours(g: &StaticDigraph) -> Vec<Vec<(u32, u8)>> {
    let mut nbrs = vec![Vec::new(); g.node_count()];
    for &(a, b) in g.arcs() {
        nbrs[a as usize].push((b, 1u8));
        nbrs[b as usize].push((a, 2u8));
    }
    for list in &mut nbrs {
        list.sort_unstable();
        list.dedup_by(|next, kept| {
            if next.0 == kept.0 {
                kept.1 |= next.1;
                true
            } else {
                false
            }
        });
    }
    nbrs
}

fn code_table() -> [TriadCode; 64] {
    let mut table = [TriadCode::T003; 64];
    for (bits, slot) in table.iter_mut().enumerate() {
        *slot = triad_code(TriadArcs::from_bits(bits as u8));
    }
    table
}

/// Triad census visiting only connected triples.
///
/// Each adjacent pair `v < u` is visited once. Third nodes adjacent to
/// neither endpoint contribute a dyadic triad (012 or 102) in bulk; every
/// connected triple is classified exactly once by choosing its canonical
/// pair. The 003 count is what remains of `C(n, 3)`.
pub fn triad_census(g: &StaticDigraph) -> StaticCounts {
    let n = g.node_count();
    let mut census = StaticCounts::default();
    if n < 3 {
        return census;
    }
    let nbrs = tagged_neighbours(g);
    let table = code_table();
    // direction bits relative to the current v and u
    let mut row_v = vec![0u8; n];
    let mut row_u = vec![0u8; n];
    let mut mark = vec![u32::MAX; n];
    let mut stamp = 0u32;

    for v in 0..n as u32 {
        for &(w, d) in &nbrs[v as usize] {
            row_v[w as usize] = d;
        }
        for &(u, _) in &nbrs[v as usize] {
            if u <= v {
                continue;
            }
            for &(w, d) in &nbrs[u as usize] {
                row_u[w as usize] = d;
            }
            let vu = row_v[u as usize];
            let mut union_size = 0u64;
            for &(w, _) in nbrs[v as usize].iter().chain(&nbrs[u as usize]) {
                if w == u || w == v || mark[w as usize] == stamp {
                    continue;
                }
                mark[w as usize] = stamp;
                union_size += 1;
                let vw = row_v[w as usize];
                if u < w || (v < w && vw == 0) {
                    let bits = vu | vw << 2 | row_u[w as usize] << 4;
                    census.bump(table[bits as usize], 1);
                }
            }
            stamp = stamp.wrapping_add(1);
            for &(w, _) in &nbrs[u as usize] {
                row_u[w as usize] = 0;
            }
            let dyad = if vu == 3 { TriadCode::T102 } else { TriadCode::T012 };
            census.bump(dyad, n as u64 - union_size - 2);
        }
        for &(w, _) in &nbrs[v as usize] {
            row_v[w as usize] = 0;
        }
    }
    let connected = census.total();
    census.counts[TriadCode::T003.index()] = choose3(n) - connected;
    census
}

/// Triad census by enumerating every node triple. Refuses digraphs with
/// more than [`BRUTEFORCE_NODE_LIMIT`] nodes.
pub fn triad_census_bruteforce(g: &StaticDigraph) -> Result<StaticCounts> {
    let n = g.node_count();
    if n > BRUTEFORCE_NODE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "brute-force triad census",
            size: n,
            limit: BRUTEFORCE_NODE_LIMIT,
        });
    }
    let mut census = StaticCounts::default();
    let n = n as u32;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let nodes = [a, b, c];
                let code = triad_code(TriadArcs::from_fn(|x, y| g.has_arc(nodes[x], nodes[y])));
                census.bump(code, 1);
            }
        }
    }
    Ok(census)
}
