//! Temporal network data model.
//!
//! A [`TemporalGraph`] is a node set plus a list of directed, timestamped
//! edges kept in `(t, seq)` order, where `seq` is the edge's position in the
//! input. The pair gives a total order even when timestamps tie, which the
//! temporal motif definitions rely on.

use std::collections::{BTreeSet, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub type NodeId = u64;
/// Integer seconds.
pub type Timestamp = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub src: NodeId,
    pub dst: NodeId,
    pub t: Timestamp,
    /// Input-order ordinal, unique within a graph.
    pub seq: u64,
}

impl TemporalEdge {
    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }

    fn order_key(&self) -> (Timestamp, u64) {
        (self.t, self.seq)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TemporalGraph {
    id: String,
    nodes: Vec<NodeId>,
    edges: Vec<TemporalEdge>,
}

impl TemporalGraph {
    /// Builds a graph from `(src, dst, t)` triples; `seq` is the position in
    /// the iterator.
    pub fn from_triples<I>(id: impl Into<String>, triples: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId, Timestamp)>,
    {
        let edges = triples
            .into_iter()
            .enumerate()
            .map(|(seq, (src, dst, t))| TemporalEdge {
                src,
                dst,
                t,
                seq: seq as u64,
            })
            .collect();
        Self::from_parts(id, std::iter::empty(), edges)
            .expect("sequential ordinals are unique")
    }

    /// Builds a graph from explicit edges. The node set is `extra_nodes`
    /// plus every edge endpoint. Fails if two edges share a `seq`.
    pub fn from_parts<I>(
        id: impl Into<String>,
        extra_nodes: I,
        mut edges: Vec<TemporalEdge>,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = NodeId>,
    {
        edges.sort_unstable_by_key(TemporalEdge::order_key);
        let mut seen = HashSet::with_capacity(edges.len());
        for e in &edges {
            if !seen.insert(e.seq) {
                return Err(Error::Validation(format!(
                    "duplicate edge ordinal {}",
                    e.seq
                )));
            }
        }
        let mut nodes: Vec<NodeId> = extra_nodes.into_iter().collect();
        nodes.extend(edges.iter().flat_map(|e| [e.src, e.dst]));
        nodes.sort_unstable();
        nodes.dedup();
        Ok(TemporalGraph {
            id: id.into(),
            nodes,
            edges,
        })
    }

    pub fn empty(id: impl Into<String>) -> Self {
        TemporalGraph {
            id: id.into(),
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// Sorted, distinct node identifiers.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    /// Edges in `(t, seq)` order.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `(t_min, t_max)`, or `None` for an edgeless graph.
    pub fn time_span(&self) -> Option<(Timestamp, Timestamp)> {
        Some((self.edges.first()?.t, self.edges.last()?.t))
    }

    /// Dense index of `node` in `0..node_count()`.
    pub fn dense_index(&self, node: NodeId) -> Option<usize> {
        self.nodes.binary_search(&node).ok()
    }

    /// Edges with endpoints remapped to dense indices, in `(t, seq)` order.
    pub fn dense_edges(&self) -> Vec<(u32, u32, Timestamp)> {
        self.edges
            .iter()
            .map(|e| {
                let s = self.dense_index(e.src).expect("endpoint in node set");
                let d = self.dense_index(e.dst).expect("endpoint in node set");
                (s as u32, d as u32, e.t)
            })
            .collect()
    }
}

/// Reads `SRC DST TIMESTAMP` lines. Blank lines and lines starting with `#`
/// or `%` are skipped.
pub fn parse_temporal_edgelist<R: BufRead>(
    reader: R,
    clean_self_loops: bool,
) -> Result<TemporalGraph> {
    let mut nodes = BTreeSet::new();
    let mut edges = Vec::new();
    let mut seq = 0u64;
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let (src, dst, t) = parse_line(trimmed, lineno)?;
        nodes.insert(src);
        nodes.insert(dst);
        if clean_self_loops && src == dst {
            continue;
        }
        edges.push(TemporalEdge { src, dst, t, seq });
        seq += 1;
    }
    TemporalGraph::from_parts("", nodes, edges)
}

fn parse_line(line: &str, lineno: usize) -> Result<(NodeId, NodeId, Timestamp)> {
    let err = |message: String| Error::Parse {
        line: lineno,
        message,
    };
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(err(format!(
            "expected 3 fields `SRC DST TIMESTAMP`, found {}",
            fields.len()
        )));
    }
    let node = |s: &str| {
        s.parse::<NodeId>()
            .map_err(|_| err(format!("invalid node id `{s}`")))
    };
    let src = node(fields[0])?;
    let dst = node(fields[1])?;
    let t: Timestamp = fields[2]
        .parse()
        .map_err(|_| err(format!("invalid timestamp `{}`", fields[2])))?;
    if t < 0 {
        return Err(err(format!("negative timestamp {t}")));
    }
    Ok((src, dst, t))
}

/// Opens and parses an edge-list file; the graph id is the file stem.
pub fn read_temporal_edgelist(path: &Path, clean_self_loops: bool) -> Result<TemporalGraph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let g = parse_temporal_edgelist(BufReader::new(file), clean_self_loops)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(g.with_id(stem))
}

/// Writes edges as `SRC DST TIMESTAMP` lines in graph order.
pub fn write_temporal_edgelist<W: Write>(g: &TemporalGraph, mut out: W) -> std::io::Result<()> {
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.src, e.dst, e.t)?;
    }
    Ok(())
}

/// Simple directed graph on nodes `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaticDigraph {
    n: usize,
    arcs: Vec<(u32, u32)>,
}

impl StaticDigraph {
    /// Arcs may arrive in any order; duplicates and self-loops are rejected.
    pub fn new(n: usize, mut arcs: Vec<(u32, u32)>) -> Result<Self> {
        arcs.sort_unstable();
        for w in arcs.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidInput(format!(
                    "duplicate arc {:?}",
                    w[0]
                )));
            }
        }
        for &(a, b) in &arcs {
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop on node {a}")));
            }
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidInput(format!(
                    "arc ({a},{b}) out of range for {n} nodes"
                )));
            }
        }
        Ok(StaticDigraph { n, arcs })
    }

    pub fn complete(n: usize) -> Self {
        let arcs = (0..n as u32)
            .flat_map(|a| (0..n as u32).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        StaticDigraph { n, arcs }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Sorted, distinct arcs.
    pub fn arcs(&self) -> &[(u32, u32)] {
        &self.arcs
    }

    pub fn has_arc(&self, a: u32, b: u32) -> bool {
        self.arcs.binary_search(&(a, b)).is_ok()
    }

    pub fn reversed(&self) -> Self {
        let mut arcs: Vec<_> = self.arcs.iter().map(|&(a, b)| (b, a)).collect();
        arcs.sort_unstable();
        StaticDigraph { n: self.n, arcs }
    }
}

/// Distinct `(src, dst)` pairs of `g` over its dense node indexing.
/// Self-loops are dropped.
pub fn aggregate_static(g: &TemporalGraph) -> StaticDigraph {
    let mut arcs: Vec<(u32, u32)> = g
        .dense_edges()
        .into_iter()
        .filter(|&(s, d, _)| s != d)
        .map(|(s, d, _)| (s, d))
        .collect();
    arcs.sort_unstable();
    arcs.dedup();
    StaticDigraph {
        n: g.node_count(),
        arcs,
    }
}

/// Edges with both endpoints in `members`, order preserved.
pub fn induced_subgraph(g: &TemporalGraph, members: &BTreeSet<NodeId>) -> TemporalGraph {
    let edges = g
        .edges()
        .iter()
        .filter(|e| members.contains(&e.src) && members.contains(&e.dst))
        .copied()
        .collect();
    TemporalGraph::from_parts(g.id(), std::iter::empty(), edges)
        .expect("subset of unique ordinals")
}

/// Half-open windows `[t_min + k*stride, t_min + k*stride + window)`.
pub fn slice_by_time(
    g: &TemporalGraph,
    window: Timestamp,
    stride: Timestamp,
) -> Result<Vec<TemporalGraph>> {
    match g.time_span() {
        Some((t_min, _)) => slice_by_time_from(g, t_min, window, stride),
        None => {
            check_window(window, stride)?;
            Ok(Vec::new())
        }
    }
}

/// Like [`slice_by_time`] with windows anchored at `anchor` instead of the
/// earliest timestamp. Slices are emitted until the window start passes the
/// latest timestamp; empty slices are kept.
pub fn slice_by_time_from(
    g: &TemporalGraph,
    anchor: Timestamp,
    window: Timestamp,
    stride: Timestamp,
) -> Result<Vec<TemporalGraph>> {
    check_window(window, stride)?;
    let Some((_, t_max)) = g.time_span() else {
        return Ok(Vec::new());
    };
    let edges = g.edges();
    let mut slices = Vec::new();
    let mut k = 0usize;
    loop {
        let start = anchor + k as Timestamp * stride;
        if start > t_max {
            break;
        }
        let end = start.saturating_add(window);
        let lo = edges.partition_point(|e| e.t < start);
        let hi = edges.partition_point(|e| e.t < end);
        let slice = TemporalGraph::from_parts(
            format!("{}/w{k}", g.id()),
            std::iter::empty(),
            edges[lo..hi].to_vec(),
        )
        .expect("subset of unique ordinals");
        slices.push(slice);
        k += 1;
    }
    Ok(slices)
}

fn check_window(window: Timestamp, stride: Timestamp) -> Result<()> {
    if window <= 0 || stride <= 0 {
        return Err(Error::InvalidInput(format!(
            "window ({window}) and stride ({stride}) must be positive"
        )));
    }
    Ok(())
}
