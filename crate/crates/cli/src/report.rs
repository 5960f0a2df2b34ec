use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use motif_srp::datasets::LabeledGraph;
use motif_srp::static_motifs::TriadCode;
use motif_srp::temporal_motifs::TemporalMotifId;
use motif_srp::{SrpConfig, TemporalGraph, Variant};
use serde::Serialize;
use serde_json::{Map, Value};

/// JSON written next to every embedding CSV.
#[derive(Debug, Serialize)]
pub struct Sidecar {
    pub command: &'static str,
    pub task: Option<String>,
    pub variant: String,
    pub feature_count: usize,
    pub delta: i64,
    pub epsilon: f64,
    pub replicas: usize,
    pub seed: u64,
    pub threads: usize,
    pub inputs: Vec<String>,
    pub options: Map<String, Value>,
    pub input_time_span: Option<TimeSpan>,
    pub graphs: usize,
    pub graphs_per_label: BTreeMap<usize, usize>,
    pub feature_names: Vec<String>,
    pub wall_time_seconds: f64,
}

#[derive(Debug, Serialize)]
pub struct TimeSpan {
    pub t_min: i64,
    pub t_max: i64,
    pub days: f64,
}

impl TimeSpan {
    pub fn of(g: &TemporalGraph) -> Option<Self> {
        g.time_span().map(|(t_min, t_max)| TimeSpan {
            t_min,
            t_max,
            days: (t_max - t_min) as f64 / 86_400.0,
        })
    }
}

impl Sidecar {
    pub fn new(command: &'static str, cfg: &SrpConfig, graphs: &[LabeledGraph]) -> Self {
        let mut per_label = BTreeMap::new();
        for g in graphs {
            *per_label.entry(g.label).or_insert(0) += 1;
        }
        Sidecar {
            command,
            task: None,
            variant: cfg.variant.tag().to_string(),
            feature_count: cfg.variant.len(),
            delta: cfg.delta,
            epsilon: cfg.epsilon,
            replicas: cfg.replicas,
            seed: cfg.seed,
            threads: rayon::current_num_threads(),
            inputs: Vec::new(),
            options: Map::new(),
            input_time_span: None,
            graphs: graphs.len(),
            graphs_per_label: per_label,
            feature_names: feature_names(cfg.variant),
            wall_time_seconds: 0.0,
        }
    }
}

pub fn temporal_feature_name(id: TemporalMotifId) -> String {
    format!("temporal:{id}")
}

pub fn static_feature_name(code: TriadCode) -> String {
    format!("static:{code}")
}

pub fn feature_names(variant: Variant) -> Vec<String> {
    let temporal = || TemporalMotifId::all().map(temporal_feature_name);
    let stat = || TriadCode::ALL.into_iter().map(static_feature_name);
    match variant {
        Variant::Temporal => temporal().collect(),
        Variant::Static => stat().collect(),
        Variant::TempStatic => temporal().chain(stat()).collect(),
    }
}

/// `emb.csv` -> `emb.meta.json`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("meta.json")
}
