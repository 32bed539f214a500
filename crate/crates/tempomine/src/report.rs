//! Machine-readable run reports: one JSON document per run holding the
//! config echo, the emitted patterns with reconstructed edge lists, a
//! pattern-count-by-size histogram, and per-phase timings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::miner::Pattern;
use crate::temporal::DataSet;
use crate::vocab::Vocab;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub data: String,
    pub iso: String,
    pub min_supp: String,
    pub duration_bin: Option<f64>,
    pub delay_bin: Option<f64>,
    pub max_edges: Option<usize>,
    pub workers: usize,
    pub time_eps: f64,
    pub with_support_ids: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub load_secs: f64,
    pub mine_secs: f64,
    pub total_secs: f64,
}

/// One temporal edge of a reconstructed pattern instance, in the
/// edge-list column order, with start times rebased to 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeRow {
    pub u: String,
    pub v: String,
    pub attr_u: String,
    pub attr_e: String,
    pub attr_v: String,
    pub start: f64,
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub canonical_label: String,
    pub temporal_edges: usize,
    pub support: usize,
    pub networks: Vec<String>,
    pub edge_list: Vec<EdgeRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub patterns: Vec<PatternRecord>,
    /// Pattern count keyed by number of temporal edges.
    pub histogram: BTreeMap<usize, usize>,
    pub timings: Timings,
}

impl RunReport {
    /// Recomputes the histogram from the records; used to uphold the
    /// reproducibility invariant.
    pub fn histogram_of(patterns: &[PatternRecord]) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for p in patterns {
            *h.entry(p.temporal_edges).or_insert(0) += 1;
        }
        h
    }
}

/// Renders one pattern's representative instance as an edge list with
/// base time 0. Vertex names are anonymized to `v0, v1, ...` in order
/// of first appearance unless `with_support_ids` asks for the concrete
/// origin identifiers.
pub fn edge_rows(
    ds: &DataSet,
    vocab: &Vocab,
    pattern: &Pattern,
    with_support_ids: bool,
) -> Vec<EdgeRow> {
    let net = &ds.networks[pattern.representative.network];
    let mut ids = pattern.representative.edge_ids.clone();
    ids.sort_unstable();
    let base = ids
        .iter()
        .map(|&i| net.edges[i].start)
        .fold(f64::INFINITY, f64::min);
    let mut names: BTreeMap<u32, String> = BTreeMap::new();
    let mut name_of = |id: crate::vocab::VertexId| -> String {
        if with_support_ids {
            vocab.vertex_name(id).to_string()
        } else {
            let next = names.len();
            names.entry(id.0).or_insert_with(|| format!("v{next}")).clone()
        }
    };
    ids.iter()
        .map(|&i| {
            let e = &net.edges[i];
            EdgeRow {
                u: name_of(e.u),
                v: name_of(e.v),
                attr_u: vocab.attr_name(e.attr_u).to_string(),
                attr_e: vocab.attr_name(e.attr_e).to_string(),
                attr_v: vocab.attr_name(e.attr_v).to_string(),
                start: e.start - base,
                duration: e.duration,
            }
        })
        .collect()
}

/// Assembles the full report from mined patterns.
pub fn build_report(
    ds: &DataSet,
    vocab: &Vocab,
    patterns: &[Pattern],
    config: ConfigEcho,
    timings: Timings,
) -> RunReport {
    let with_ids = config.with_support_ids;
    let records: Vec<PatternRecord> = patterns
        .iter()
        .map(|p| PatternRecord {
            canonical_label: p.label.serialize(vocab),
            temporal_edges: p.temporal_edges,
            support: p.support,
            networks: p
                .networks
                .iter()
                .map(|&i| ds.networks[i].name.clone())
                .collect(),
            edge_list: edge_rows(ds, vocab, p, with_ids),
        })
        .collect();
    let histogram = RunReport::histogram_of(&records);
    RunReport {
        config,
        patterns: records,
        histogram,
        timings,
    }
}
