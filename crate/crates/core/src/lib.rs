//! Motif-based feature vectors for directed temporal networks.
//!
//! A network is summarised by subgraph ratio profiles: counts of the 36
//! three-edge temporal motifs and the 16 directed triads, each compared
//! against a null-model ensemble (time-shuffled edges for the temporal
//! family, uniform `G(n, m)` digraphs for the static one) and normalised to
//! unit length. The resulting 16-, 36- or 52-dimensional vectors are
//! exported as CSV for downstream classifiers.

pub mod datasets;
pub mod error;
pub mod graph;
pub mod null_models;
pub mod srp;
pub mod static_motifs;
pub mod synthetic;
pub mod temporal_motifs;

pub use error::{Error, Result};
pub use graph::{
    aggregate_static, induced_subgraph, parse_temporal_edgelist, read_temporal_edgelist,
    slice_by_time, write_temporal_edgelist, NodeId, StaticDigraph, TemporalEdge, TemporalGraph,
    Timestamp,
};
pub use null_models::{
    ensemble_mean_static, ensemble_mean_temporal, random_directed_gnm, shuffle_timestamps,
    EnsembleStats,
};
pub use srp::{
    delta_ratio, embed, embed_concat, embed_static, embed_temporal, srp_normalize, SrpConfig,
    SrpVector, Variant,
};
pub use static_motifs::{triad_census, triad_census_bruteforce, StaticCounts, TriadCode};
pub use temporal_motifs::{
    count_motifs, count_motifs_bruteforce, motif_id, TemporalCounts, TemporalMotifId,
};
