//! Labelled graph collections for the classification tasks, and the
//! embedding CSV consumed by downstream model training.
//!
//! CSV layout: header `graph_id,label,f0,...,f{K-1}`, then one row per
//! graph in collection order. Features are written with 17 significant
//! digits so they parse back to the same `f64`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{induced_subgraph, slice_by_time, slice_by_time_from, NodeId, TemporalGraph, Timestamp};
use crate::srp::{embed, SrpConfig, Variant};
use crate::synthetic::{gen_synthetic_with, EmailParams, Family, FamilyParams, SwitchParams};

pub const DAY: Timestamp = 86_400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Task {
    TypeClassification,
    DepartmentId,
    UserId,
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Task::TypeClassification => "type",
            Task::DepartmentId => "email-dept",
            Task::UserId => "user-id",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Department { department: u64, window: usize },
    UserDay { user: String, day: usize },
    Synthetic { family: Family, index: usize },
    Input { name: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGraph {
    pub graph: TemporalGraph,
    pub label: usize,
    pub task: Task,
    pub source: GraphSource,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledEmbedding {
    pub graph_id: String,
    pub label: usize,
    pub variant: Variant,
    pub values: Vec<f64>,
}

/// Node to department map from `NODE DEPARTMENT` lines.
pub fn parse_department_labels<R: BufRead>(reader: R) -> Result<BTreeMap<NodeId, u64>> {
    let mut labels = BTreeMap::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let line = line.map_err(|e| err(e.to_string()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(format!(
                "expected 2 fields `NODE DEPARTMENT`, found {}",
                fields.len()
            )));
        }
        let node: NodeId = fields[0]
            .parse()
            .map_err(|_| err(format!("invalid node id `{}`", fields[0])))?;
        let dept: u64 = fields[1]
            .parse()
            .map_err(|_| err(format!("invalid department `{}`", fields[1])))?;
        if let Some(prev) = labels.insert(node, dept) {
            if prev != dept {
                return Err(err(format!(
                    "node {node} assigned to departments {prev} and {dept}"
                )));
            }
        }
    }
    Ok(labels)
}

pub fn read_department_labels(path: &Path) -> Result<BTreeMap<NodeId, u64>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    parse_department_labels(BufReader::new(file))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepartmentOptions {
    /// Departments need strictly more members than this.
    pub min_size: usize,
    pub window: Timestamp,
    pub stride: Timestamp,
    pub min_edges: usize,
}

impl Default for DepartmentOptions {
    fn default() -> Self {
        DepartmentOptions {
            min_size: 10,
            window: 28 * DAY,
            stride: 28 * DAY,
            min_edges: 50,
        }
    }
}

/// Departments with more than `min_size` members, in ascending id order.
/// Their position in this list is their class label.
pub fn eligible_departments(labels: &BTreeMap<NodeId, u64>, min_size: usize) -> Vec<u64> {
    let mut sizes: BTreeMap<u64, usize> = BTreeMap::new();
    for &d in labels.values() {
        *sizes.entry(d).or_default() += 1;
    }
    sizes
        .into_iter()
        .filter(|&(_, size)| size > min_size)
        .map(|(d, _)| d)
        .collect()
}

/// One graph per (department, time slice) from the within-department
/// traffic, labelled by the department's rank among eligible departments.
pub fn build_emaileu_departments(
    edges: &TemporalGraph,
    labels: &BTreeMap<NodeId, u64>,
    opts: &DepartmentOptions,
) -> Result<Vec<LabeledGraph>> {
    if labels.is_empty() {
        return Err(Error::Config("department label map is empty".into()));
    }
    let unlabeled: Vec<NodeId> = edges
        .nodes()
        .iter()
        .copied()
        .filter(|n| !labels.contains_key(n))
        .collect();
    if !unlabeled.is_empty() {
        let shown: Vec<String> = unlabeled.iter().take(20).map(|n| n.to_string()).collect();
        let more = if unlabeled.len() > 20 { ", ..." } else { "" };
        return Err(Error::Validation(format!(
            "{} node(s) in the edge list have no department: {}{more}",
            unlabeled.len(),
            shown.join(", ")
        )));
    }

    let mut out = Vec::new();
    for (label, dept) in eligible_departments(labels, opts.min_size).into_iter().enumerate() {
        let members: BTreeSet<NodeId> = labels
            .iter()
            .filter(|&(_, &d)| d == dept)
            .map(|(&n, _)| n)
            .collect();
        let sub = induced_subgraph(edges, &members).with_id(format!("dept{dept}"));
        for (window, slice) in slice_by_time(&sub, opts.window, opts.stride)?
            .into_iter()
            .enumerate()
        {
            if slice.edge_count() >= opts.min_edges {
                out.push(LabeledGraph {
                    graph: slice,
                    label,
                    task: Task::DepartmentId,
                    source: GraphSource::Department {
                        department: dept,
                        window,
                    },
                });
            }
        }
    }
    Ok(out)
}

/// Non-overlapping day slices per user, aligned to multiples of
/// `day_length` since the epoch. Users are labelled in key order; empty
/// days are dropped.
pub fn build_daily_user_graphs(
    per_user: &BTreeMap<String, TemporalGraph>,
    day_length: Timestamp,
) -> Result<Vec<LabeledGraph>> {
    let mut out = Vec::new();
    for (label, (user, g)) in per_user.iter().enumerate() {
        let Some((t_min, _)) = g.time_span() else {
            continue;
        };
        let anchor = t_min.div_euclid(day_length) * day_length;
        let named = g.clone().with_id(format!("user{user}"));
        for (day, slice) in slice_by_time_from(&named, anchor, day_length, day_length)?
            .into_iter()
            .enumerate()
        {
            if slice.is_empty() {
                continue;
            }
            out.push(LabeledGraph {
                graph: slice.with_id(format!("user{user}/d{day}")),
                label,
                task: Task::UserId,
                source: GraphSource::UserDay {
                    user: user.clone(),
                    day,
                },
            });
        }
    }
    Ok(out)
}

/// Email-derived graphs get label 0, app-switching graphs label 1.
pub fn build_type_task(email: Vec<TemporalGraph>, switch: Vec<TemporalGraph>) -> Vec<LabeledGraph> {
    let tag = |label: usize, family: Family| {
        move |(index, graph): (usize, TemporalGraph)| LabeledGraph {
            graph,
            label,
            task: Task::TypeClassification,
            source: GraphSource::Synthetic { family, index },
        }
    };
    email
        .into_iter()
        .enumerate()
        .map(tag(0, Family::EmailLike))
        .chain(switch.into_iter().enumerate().map(tag(1, Family::SwitchLike)))
        .collect()
}

/// Sizes for synthetic type-classification graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticTypeOptions {
    pub per_family: usize,
    pub nodes: (usize, usize),
    pub edges: (usize, usize),
    pub span: Timestamp,
    pub seed: u64,
}

impl Default for SyntheticTypeOptions {
    fn default() -> Self {
        SyntheticTypeOptions {
            per_family: 20,
            nodes: (20, 60),
            edges: (300, 800),
            span: DAY,
            seed: 0,
        }
    }
}

/// `per_family` email-like (label 0) then switch-like (label 1) graphs with
/// sizes drawn from the option ranges.
pub fn build_synthetic_type_task(opts: &SyntheticTypeOptions) -> Result<Vec<LabeledGraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut families: [Vec<TemporalGraph>; 2] = [Vec::new(), Vec::new()];
    for (slot, family) in [Family::EmailLike, Family::SwitchLike].into_iter().enumerate() {
        for index in 0..opts.per_family {
            let n = rng.gen_range(opts.nodes.0..=opts.nodes.1);
            let m = rng.gen_range(opts.edges.0..=opts.edges.1);
            let seed = rng.gen();
            let g = gen_synthetic_with(&FamilyParams::default_for(family), n, m, opts.span, seed)?;
            families[slot].push(g.with_id(format!("{family}{index}")));
        }
    }
    let [email, switch] = families;
    Ok(build_type_task(email, switch))
}

/// App-switching streams for `users` synthetic users over `days` days, each
/// with its own app count, daily volume and switching habits.
pub fn synthetic_users(users: usize, days: usize, seed: u64) -> Result<BTreeMap<String, TemporalGraph>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = users.max(1).to_string().len();
    let mut out = BTreeMap::new();
    for u in 0..users {
        let apps = rng.gen_range(8..=25);
        let per_day = rng.gen_range(40..=120);
        let gap_lo = rng.gen_range(1..=5);
        let params = SwitchParams {
            mean_session_len: rng.gen_range(4.0..14.0),
            gap_range: (gap_lo, rng.gen_range(30..=180)),
            favorites: rng.gen_range(2..=5),
            p_favorite: rng.gen_range(0.6..0.95),
        };
        let g = gen_synthetic_with(
            &FamilyParams::Switch(params),
            apps,
            per_day * days,
            days as Timestamp * DAY,
            rng.gen(),
        )?;
        out.insert(format!("{u:0width$}"), g);
    }
    Ok(out)
}

/// Email-like graph at a chosen scale, used for throughput checks.
pub fn synthetic_email_network(n: usize, m: usize, span: Timestamp, seed: u64) -> Result<TemporalGraph> {
    gen_synthetic_with(&FamilyParams::Email(EmailParams::default()), n, m, span, seed)
}

/// Embeds every graph, preserving collection order.
pub fn embed_dataset(graphs: &[LabeledGraph], cfg: &SrpConfig) -> Result<Vec<LabeledEmbedding>> {
    cfg.validate()?;
    graphs
        .par_iter()
        .map(|lg| {
            Ok(LabeledEmbedding {
                graph_id: lg.graph.id().to_string(),
                label: lg.label,
                variant: cfg.variant,
                values: embed(&lg.graph, cfg)?,
            })
        })
        .collect()
}

fn check_records(records: &[LabeledEmbedding]) -> Result<Option<Variant>> {
    let Some(first) = records.first() else {
        return Ok(None);
    };
    for r in records {
        if r.variant != first.variant {
            return Err(Error::Validation(format!(
                "mixed variants in one export: {} and {}",
                first.variant, r.variant
            )));
        }
        if r.values.len() != r.variant.len() {
            return Err(Error::Validation(format!(
                "graph {} has {} features, variant {} needs {}",
                r.graph_id,
                r.values.len(),
                r.variant,
                r.variant.len()
            )));
        }
    }
    Ok(Some(first.variant))
}

pub fn format_feature(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the embedding CSV. With no records the header has no feature
/// columns unless `width` is given.
pub fn write_embeddings<W: Write>(
    records: &[LabeledEmbedding],
    width: Option<usize>,
    out: W,
) -> Result<()> {
    let variant = check_records(records)?;
    let k = variant.map(Variant::len).or(width).unwrap_or(0);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["graph_id".to_string(), "label".to_string()];
    header.extend((0..k).map(|i| format!("f{i}")));
    w.write_record(&header)?;
    for r in records {
        let mut row = Vec::with_capacity(k + 2);
        row.push(r.graph_id.clone());
        row.push(r.label.to_string());
        row.extend(r.values.iter().map(|&v| format_feature(v)));
        w.write_record(&row)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn export_embeddings(records: &[LabeledEmbedding], destination: &Path) -> Result<()> {
    // validate before touching the filesystem
    let variant = check_records(records)?;
    let file = File::create(destination).map_err(|e| Error::io(destination, e))?;
    write_embeddings(records, variant.map(Variant::len), std::io::BufWriter::new(file))
}

/// Reads an embedding CSV written for `variant`.
pub fn read_embeddings(path: &Path, variant: Variant) -> Result<Vec<LabeledEmbedding>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::Reader::from_reader(BufReader::new(file));
    let mut out = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        if row.len() != variant.len() + 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected {} columns, found {}", variant.len() + 2, row.len()),
            });
        }
        let label = row[1].parse().map_err(|_| Error::Parse {
            line,
            message: format!("invalid label `{}`", &row[1]),
        })?;
        let values = row
            .iter()
            .skip(2)
            .map(|s| {
                s.parse::<f64>().map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid feature `{s}`"),
                })
            })
            .collect::<Result<_>>()?;
        out.push(LabeledEmbedding {
            graph_id: row[0].to_string(),
            label,
            variant,
            values,
        });
    }
    Ok(out)
}
