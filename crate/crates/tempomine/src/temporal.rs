//! Domain types for continuous-time temporal networks and their ingestion:
//! edge-list parsing, contact-sequence merging, and per-window splitting.

use std::collections::BTreeSet;
use std::io::BufRead;

use thiserror::Error;

use crate::vocab::{Attr, VertexId, Vocab};

/// A closed interval `[lo, hi]` on the real time line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    /// Closed-interval overlap: non-empty iff neither lies strictly
    /// before the other.
    pub fn overlaps(&self, other: &Interval) -> bool {
        !(other.hi < self.lo || self.hi < other.lo)
    }
}

/// One timed interaction between two vertices.
///
/// Undirected: endpoints are stored with `u <= v` by interned identifier,
/// attributes swapped along with them so `(u, attr_u)` and `(v, attr_v)`
/// stay paired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TemporalEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub attr_u: Attr,
    pub attr_e: Attr,
    pub attr_v: Attr,
    pub start: f64,
    pub duration: f64,
}

impl TemporalEdge {
    /// Builds an edge with normalized endpoint order. Returns `None` for
    /// self-loops, which the representation rejects.
    pub fn new(
        u: VertexId,
        attr_u: Attr,
        v: VertexId,
        attr_v: Attr,
        attr_e: Attr,
        start: f64,
        duration: f64,
    ) -> Option<Self> {
        if u == v {
            return None;
        }
        let (u, attr_u, v, attr_v) = if u <= v {
            (u, attr_u, v, attr_v)
        } else {
            (v, attr_v, u, attr_u)
        };
        Some(TemporalEdge {
            u,
            v,
            attr_u,
            attr_e,
            attr_v,
            start,
            duration,
        })
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.start, self.start + self.duration)
    }

    pub fn touches(&self, vertex: VertexId) -> bool {
        self.u == vertex || self.v == vertex
    }
}

/// A start-time-sorted sequence of temporal edges plus its vertex set.
#[derive(Debug, Clone, Default)]
pub struct TemporalNetwork {
    pub name: String,
    pub edges: Vec<TemporalEdge>,
    pub vertices: BTreeSet<VertexId>,
}

impl TemporalNetwork {
    /// Builds a network from edges in any order; sorts stably by start
    /// and collects the vertex set.
    pub fn from_edges(name: impl Into<String>, mut edges: Vec<TemporalEdge>) -> Self {
        edges.sort_by(|a, b| a.start.partial_cmp(&b.start).unwrap());
        let vertices = edges.iter().flat_map(|e| [e.u, e.v]).collect();
        TemporalNetwork {
            name: name.into(),
            edges,
            vertices,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Serializes to the 7-column edge-list format.
    pub fn to_edge_list(&self, vocab: &Vocab) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!(
                "{} {} {} {} {} {} {}\n",
                vocab.vertex_name(e.u),
                vocab.vertex_name(e.v),
                vocab.attr_name(e.attr_u),
                vocab.attr_name(e.attr_e),
                vocab.attr_name(e.attr_v),
                e.start,
                e.duration
            ));
        }
        out
    }
}

/// An ordered collection of temporal networks with unique names.
#[derive(Debug, Clone, Default)]
pub struct DataSet {
    pub networks: Vec<TemporalNetwork>,
}

impl DataSet {
    pub fn push(&mut self, network: TemporalNetwork) -> Result<(), ParseError> {
        if self.networks.iter().any(|n| n.name == network.name) {
            return Err(ParseError::DuplicateNetworkName(network.name));
        }
        self.networks.push(network);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.networks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.networks.is_empty()
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected} columns, found {found}")]
    ColumnCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: invalid number `{value}`")]
    BadNumber { line: usize, value: String },
    #[error("line {line}: negative duration {value}")]
    NegativeDuration { line: usize, value: f64 },
    #[error("line {line}: self-loop on vertex `{vertex}` is not allowed")]
    SelfLoop { line: usize, vertex: String },
    #[error("resolution must be positive, got {0}")]
    BadResolution(f64),
    #[error("window boundaries must be strictly increasing")]
    BadBoundaries,
    #[error("duplicate network name `{0}` in data set")]
    DuplicateNetworkName(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn parse_time(tok: &str, line: usize) -> Result<f64, ParseError> {
    tok.parse::<f64>().map_err(|_| ParseError::BadNumber {
        line,
        value: tok.to_string(),
    })
}

/// Snaps a time to the epsilon grid. With `eps = 0` times are kept exact;
/// otherwise equality-sensitive comparisons happen on grid multiples.
pub fn snap(t: f64, eps: f64) -> f64 {
    if eps > 0.0 {
        (t / eps).round() * eps
    } else {
        t
    }
}

/// Parses the 7-column edge-list format:
/// `u v attr_u attr_e attr_v start duration`, `#` starting a comment line.
pub fn parse_edge_list(
    reader: impl BufRead,
    name: &str,
    vocab: &mut Vocab,
    time_eps: f64,
) -> Result<TemporalNetwork, ParseError> {
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = trimmed.split_whitespace().collect();
        if cols.len() != 7 {
            return Err(ParseError::ColumnCount {
                line: lineno,
                expected: 7,
                found: cols.len(),
            });
        }
        let start = snap(parse_time(cols[5], lineno)?, time_eps);
        let duration = snap(parse_time(cols[6], lineno)?, time_eps);
        if duration < 0.0 {
            return Err(ParseError::NegativeDuration {
                line: lineno,
                value: duration,
            });
        }
        let u = vocab.vertex(cols[0]);
        let v = vocab.vertex(cols[1]);
        let attr_u = vocab.attr(cols[2]);
        let attr_e = vocab.attr(cols[3]);
        let attr_v = vocab.attr(cols[4]);
        let edge = TemporalEdge::new(u, attr_u, v, attr_v, attr_e, start, duration).ok_or(
            ParseError::SelfLoop {
                line: lineno,
                vertex: cols[0].to_string(),
            },
        )?;
        edges.push(edge);
    }
    Ok(TemporalNetwork::from_edges(name, edges))
}

/// One fixed-resolution contact record: `u` and `v` were in contact during
/// `[time - resolution, time]`.
#[derive(Debug, Clone, Copy)]
pub struct Contact {
    pub time: f64,
    pub u: VertexId,
    pub v: VertexId,
    pub attr_u: Attr,
    pub attr_v: Attr,
}

/// Parses the SocioPatterns contact format: `t i j [Ci Cj]`. When the
/// class columns are missing, every vertex takes a single shared token.
pub fn parse_sociopatterns(
    reader: impl BufRead,
    vocab: &mut Vocab,
) -> Result<Vec<Contact>, ParseError> {
    let mut contacts = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = trimmed.split_whitespace().collect();
        if cols.len() != 3 && cols.len() != 5 {
            return Err(ParseError::ColumnCount {
                line: lineno,
                expected: 5,
                found: cols.len(),
            });
        }
        let time = parse_time(cols[0], lineno)?;
        let u = vocab.vertex(cols[1]);
        let v = vocab.vertex(cols[2]);
        let (attr_u, attr_v) = if cols.len() == 5 {
            (vocab.attr(cols[3]), vocab.attr(cols[4]))
        } else {
            let shared = vocab.attr("_");
            (shared, shared)
        };
        contacts.push(Contact {
            time,
            u,
            v,
            attr_u,
            attr_v,
        });
    }
    Ok(contacts)
}

/// Merges fixed-resolution contacts into interval edges: maximal runs of
/// contacts at consecutive resolution steps for one vertex pair (with
/// fixed attributes) become a single edge with
/// `start = first contact time - resolution` and
/// `duration = run length * resolution`.
pub fn merge_contacts(
    contacts: &[Contact],
    resolution: f64,
    name: &str,
    vocab: &mut Vocab,
) -> Result<TemporalNetwork, ParseError> {
    if resolution <= 0.0 {
        return Err(ParseError::BadResolution(resolution));
    }
    let edge_attr = vocab.attr("contact");
    // Group contacts per (unordered pair, attrs), keeping time order.
    use std::collections::HashMap;
    let mut groups: HashMap<(VertexId, VertexId, Attr, Attr), Vec<f64>> = HashMap::new();
    let mut order: Vec<(VertexId, VertexId, Attr, Attr)> = Vec::new();
    for c in contacts {
        let key = if c.u <= c.v {
            (c.u, c.v, c.attr_u, c.attr_v)
        } else {
            (c.v, c.u, c.attr_v, c.attr_u)
        };
        groups.entry(key).or_insert_with(|| {
            order.push(key);
            Vec::new()
        });
        groups.get_mut(&key).unwrap().push(c.time);
    }
    let mut edges = Vec::new();
    for key in order {
        let (u, v, attr_u, attr_v) = key;
        let mut times = groups.remove(&key).unwrap();
        times.sort_by(|a, b| a.partial_cmp(b).unwrap());
        times.dedup();
        let mut run_start = times[0];
        let mut run_len = 1usize;
        let flush = |first: f64, len: usize, edges: &mut Vec<TemporalEdge>| {
            let edge = TemporalEdge::new(
                u,
                attr_u,
                v,
                attr_v,
                edge_attr,
                first - resolution,
                len as f64 * resolution,
            )
            .expect("contact pair is never a self-loop here");
            edges.push(edge);
        };
        for w in times.windows(2) {
            let (prev, next) = (w[0], w[1]);
            if (next - prev - resolution).abs() < resolution * 1e-9 {
                run_len += 1;
            } else {
                flush(run_start, run_len, &mut edges);
                run_start = next;
                run_len = 1;
            }
        }
        flush(run_start, run_len, &mut edges);
    }
    Ok(TemporalNetwork::from_edges(name, edges))
}

/// Result of a window split: the per-window networks plus the number of
/// edges whose start fell outside every window.
#[derive(Debug)]
pub struct SplitResult {
    pub data_set: DataSet,
    pub dropped: usize,
}

/// Assigns each edge to the window `[b_i, b_{i+1})` containing its start
/// and re-bases each window to time 0.
pub fn split_by_window(
    network: &TemporalNetwork,
    boundaries: &[f64],
) -> Result<SplitResult, ParseError> {
    if boundaries.len() < 2 || boundaries.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ParseError::BadBoundaries);
    }
    let n_windows = boundaries.len() - 1;
    let mut buckets: Vec<Vec<TemporalEdge>> = vec![Vec::new(); n_windows];
    let mut dropped = 0usize;
    for e in &network.edges {
        match boundaries.windows(2).position(|w| w[0] <= e.start && e.start < w[1]) {
            Some(w) => {
                let mut shifted = *e;
                shifted.start -= boundaries[w];
                buckets[w].push(shifted);
            }
            None => dropped += 1,
        }
    }
    let mut data_set = DataSet::default();
    for (w, edges) in buckets.into_iter().enumerate() {
        data_set.push(TemporalNetwork::from_edges(
            format!("{}_w{}", network.name, w),
            edges,
        ))?;
    }
    Ok(SplitResult { data_set, dropped })
}
