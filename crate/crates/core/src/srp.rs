//! Subgraph ratio profiles.
//!
//! Each motif's observed count is compared to its null-ensemble mean with
//! `(obs - mean) / (obs + mean + epsilon)`, and the resulting vector is
//! scaled to unit Euclidean length (left at zero when every ratio is zero).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{aggregate_static, TemporalGraph, Timestamp};
use crate::null_models::{ensemble_mean_static, ensemble_mean_temporal};
use crate::static_motifs::triad_census;
use crate::temporal_motifs::count_motifs;

pub const DEFAULT_EPSILON: f64 = 4.0;
pub const DEFAULT_DELTA: Timestamp = 3600;
pub const DEFAULT_REPLICAS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Temporal,
    Static,
    TempStatic,
}

impl Variant {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        match self {
            Variant::Temporal => 36,
            Variant::Static => 16,
            Variant::TempStatic => 52,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Variant::Temporal => "temporal",
            Variant::Static => "static",
            Variant::TempStatic => "temp-static",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "temporal" => Ok(Variant::Temporal),
            "static" => Ok(Variant::Static),
            "temp-static" | "temp+static" => Ok(Variant::TempStatic),
            other => Err(Error::Config(format!("unknown variant `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SrpConfig {
    pub epsilon: f64,
    pub delta: Timestamp,
    pub replicas: usize,
    pub seed: u64,
    pub variant: Variant,
}

impl Default for SrpConfig {
    fn default() -> Self {
        SrpConfig {
            epsilon: DEFAULT_EPSILON,
            delta: DEFAULT_DELTA,
            replicas: DEFAULT_REPLICAS,
            seed: 0,
            variant: Variant::TempStatic,
        }
    }
}

impl SrpConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::Config(format!(
                "epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        if self.delta <= 0 {
            return Err(Error::Config(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if self.replicas == 0 {
            return Err(Error::Config("replicas must be at least 1".into()));
        }
        Ok(())
    }

    pub fn with_variant(&self, variant: Variant) -> Self {
        SrpConfig {
            variant,
            ..self.clone()
        }
    }
}

/// Unit-length (or all-zero) profile.
#[derive(Debug, Clone, PartialEq)]
pub struct SrpVector {
    values: Vec<f64>,
}

impl SrpVector {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn norm(&self) -> f64 {
        euclidean_norm(&self.values)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }
}

fn euclidean_norm(xs: &[f64]) -> f64 {
    xs.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn delta_ratio(observed: f64, null_mean: f64, epsilon: f64) -> f64 {
    (observed - null_mean) / (observed + null_mean + epsilon)
}

pub fn srp_normalize(deltas: &[f64]) -> SrpVector {
    let norm = euclidean_norm(deltas);
    let values = if norm == 0.0 {
        vec![0.0; deltas.len()]
    } else {
        deltas.iter().map(|d| d / norm).collect()
    };
    SrpVector { values }
}

/// Profile of observed counts against null means.
pub fn srp_from_counts(observed: &[u64], null_mean: &[f64], epsilon: f64) -> SrpVector {
    debug_assert_eq!(observed.len(), null_mean.len());
    let deltas: Vec<f64> = observed
        .iter()
        .zip(null_mean)
        .map(|(&o, &r)| delta_ratio(o as f64, r, epsilon))
        .collect();
    srp_normalize(&deltas)
}

/// 36 entries: temporal motif counts against time-shuffled replicas.
pub fn embed_temporal(g: &TemporalGraph, cfg: &SrpConfig) -> Result<SrpVector> {
    cfg.validate()?;
    let observed = count_motifs(g, cfg.delta);
    let null = ensemble_mean_temporal(g, cfg.delta, cfg.replicas, cfg.seed)?;
    Ok(srp_from_counts(
        observed.as_slice(),
        &null.mean_counts,
        cfg.epsilon,
    ))
}

/// 16 entries: triad census of the aggregated digraph against `G(n, m)`.
pub fn embed_static(g: &TemporalGraph, cfg: &SrpConfig) -> Result<SrpVector> {
    cfg.validate()?;
    let digraph = aggregate_static(g);
    let observed = triad_census(&digraph);
    let null = ensemble_mean_static(&digraph, cfg.replicas, cfg.seed)?;
    Ok(srp_from_counts(
        observed.as_slice(),
        &null.mean_counts,
        cfg.epsilon,
    ))
}

/// 52 entries: the temporal block followed by the static block, each
/// normalised on its own.
pub fn embed_concat(g: &TemporalGraph, cfg: &SrpConfig) -> Result<Vec<f64>> {
    let (temporal, stat) = rayon::join(|| embed_temporal(g, cfg), || embed_static(g, cfg));
    let mut values = temporal?.into_values();
    values.extend(stat?.into_values());
    Ok(values)
}

/// Embedding selected by `cfg.variant`.
pub fn embed(g: &TemporalGraph, cfg: &SrpConfig) -> Result<Vec<f64>> {
    match cfg.variant {
        Variant::Temporal => embed_temporal(g, cfg).map(SrpVector::into_values),
        Variant::Static => embed_static(g, cfg).map(SrpVector::into_values),
        Variant::TempStatic => embed_concat(g, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_ratio_arithmetic() {
        assert_eq!(delta_ratio(10.0, 10.0, 4.0), 0.0);
        assert!((delta_ratio(6.0, 0.0, 4.0) - 0.6).abs() < 1e-12);
        assert!((delta_ratio(0.0, 6.0, 4.0) + 0.6).abs() < 1e-12);
    }

    #[test]
    fn normalize_cases() {
        assert_eq!(srp_normalize(&[0.6, 0.0, 0.0]).values(), &[1.0, 0.0, 0.0]);
        assert_eq!(srp_normalize(&[0.0, 0.0]).values(), &[0.0, 0.0]);
        let v = srp_normalize(&[3.0, 4.0]);
        assert!((v.values()[0] - 0.6).abs() < 1e-12);
        assert!((v.values()[1] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        assert!(SrpConfig::default().validate().is_ok());
        let bad = [
            SrpConfig {
                epsilon: 0.0,
                ..Default::default()
            },
            SrpConfig {
                delta: 0,
                ..Default::default()
            },
            SrpConfig {
                replicas: 0,
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(matches!(cfg.validate(), Err(Error::Config(_))));
        }
    }

    #[test]
    fn variant_round_trip() {
        for v in [Variant::Temporal, Variant::Static, Variant::TempStatic] {
            assert_eq!(v.tag().parse::<Variant>().unwrap(), v);
        }
        assert!("nope".parse::<Variant>().is_err());
    }

    #[test]
    fn tiny_graph_embeds_to_zero() {
        let g = TemporalGraph::from_triples("g", [(1, 2, 1), (2, 1, 2)]);
        let cfg = SrpConfig::default();
        assert!(embed_temporal(&g, &cfg).unwrap().is_zero());
        assert_eq!(embed_temporal(&g, &cfg).unwrap().len(), 36);
    }

    #[test]
    fn single_pair_multigraph_is_exchangeable() {
        let g = TemporalGraph::from_triples("g", (0..40).map(|t| (3, 9, t * 7)));
        for replicas in [1, 4, 10] {
            let cfg = SrpConfig {
                delta: 50,
                replicas,
                seed: 11,
                ..Default::default()
            };
            let v = embed_temporal(&g, &cfg).unwrap();
            assert!(v.values().iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn static_zero_for_empty_and_complete() {
        let cfg = SrpConfig::default();
        // isolated self-loop endpoints give nodes without arcs
        let g = crate::graph::parse_temporal_edgelist("1 1 0\n2 2 0\n3 3 0\n4 4 1\n".as_bytes(), true)
            .unwrap();
        assert!(embed_static(&g, &cfg).unwrap().is_zero());

        let complete = TemporalGraph::from_triples(
            "k4",
            (0..4u64).flat_map(|a| (0..4u64).filter(move |&b| b != a).map(move |b| (a, b, (a * 4 + b) as i64))),
        );
        assert!(embed_static(&complete, &cfg).unwrap().is_zero());
    }

    #[test]
    fn concat_is_blockwise() {
        let g = TemporalGraph::from_triples(
            "g",
            [(1, 2, 0), (2, 3, 5), (3, 1, 8), (1, 2, 20), (2, 1, 21), (3, 2, 30), (1, 3, 31)],
        );
        let cfg = SrpConfig {
            delta: 15,
            replicas: 6,
            seed: 4,
            ..Default::default()
        };
        let joint = embed_concat(&g, &cfg).unwrap();
        assert_eq!(joint.len(), 52);
        assert_eq!(&joint[..36], embed_temporal(&g, &cfg).unwrap().values());
        assert_eq!(&joint[36..], embed_static(&g, &cfg).unwrap().values());
        let norm = euclidean_norm(&joint);
        let allowed = [0.0, 1.0, 2f64.sqrt()];
        assert!(allowed.iter().any(|a| (norm - a).abs() < 1e-12), "norm {norm}");
    }
}
