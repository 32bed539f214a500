//! Constrained interval graphs: one node per temporal edge, a directed
//! edge between every pair of overlapping temporal edges sharing an
//! endpoint vertex, labeled with the start-time difference. Also the
//! reverse mapping: reconstructing a temporal network from a connected
//! CIG (sub)graph and one supporting embedding.

use std::collections::BTreeSet;
use std::fmt;

use ordered_float::OrderedFloat;
use thiserror::Error;

use crate::interval_tree::IntervalTree;
use crate::temporal::{TemporalEdge, TemporalNetwork};
use crate::vocab::{Attr, Vocab};

/// A duration or delay label value. Fresh CIGs carry exact real values;
/// the isomorphism-mode transforms replace them with bins or the uniform
/// token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TimeClass {
    /// Single shared token used by the sequence-preserved modes.
    Uniform,
    /// Discretized bin index (floor of value / bin width).
    Binned(i64),
    /// Exact real value.
    Exact(OrderedFloat<f64>),
}

impl TimeClass {
    pub fn exact(v: f64) -> Self {
        TimeClass::Exact(OrderedFloat(v))
    }

    pub fn as_exact(&self) -> Option<f64> {
        match self {
            TimeClass::Exact(v) => Some(v.0),
            _ => None,
        }
    }
}

impl fmt::Display for TimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeClass::Uniform => write!(f, "*"),
            TimeClass::Binned(k) => write!(f, "b{k}"),
            TimeClass::Exact(v) => write!(f, "{}", v.0),
        }
    }
}

/// The quadruple label of a CIG node: endpoint attributes, edge
/// attribute, and duration class of the source temporal edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeLabel {
    pub attr_u: Attr,
    pub attr_e: Attr,
    pub attr_v: Attr,
    pub dur: TimeClass,
}

#[derive(Debug, Clone)]
pub struct CigNode {
    pub label: NodeLabel,
    /// Index of the origin temporal edge; absent for pattern CIGs.
    pub source_edge: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
pub struct CigEdge {
    pub from: usize,
    pub to: usize,
    pub delay: TimeClass,
}

/// Directed acyclic graph over a temporal network's edges. Node ids are
/// 0..n-1 in the origin network's (start-sorted) edge order, so every
/// edge goes from a lower id to a higher one.
#[derive(Debug, Clone, Default)]
pub struct Cig {
    pub nodes: Vec<CigNode>,
    pub edges: Vec<CigEdge>,
    /// Per-node out-neighbors as (neighbor, edge index), ordered.
    pub out: Vec<Vec<(usize, usize)>>,
    /// Per-node in-neighbors as (neighbor, edge index), ordered.
    pub inn: Vec<Vec<(usize, usize)>>,
}

impl Cig {
    pub fn from_parts(nodes: Vec<CigNode>, edges: Vec<CigEdge>) -> Self {
        let mut out = vec![Vec::new(); nodes.len()];
        let mut inn = vec![Vec::new(); nodes.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.from].push((e.to, i));
            inn[e.to].push((e.from, i));
        }
        Cig {
            nodes,
            edges,
            out,
            inn,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Connectivity in the undirected view.
    pub fn is_connected_undirected(&self) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(n, _) in self.out[v].iter().chain(self.inn[v].iter()) {
                if !seen[n] {
                    seen[n] = true;
                    count += 1;
                    stack.push(n);
                }
            }
        }
        count == self.nodes.len()
    }

    /// Induced subgraph on `keep` (node ids of this graph), renumbered in
    /// ascending id order. Source-edge references are preserved.
    pub fn induced(&self, keep: &[usize]) -> Cig {
        let mut sorted: Vec<usize> = keep.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut index = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in sorted.iter().enumerate() {
            index[old] = new;
        }
        let nodes = sorted.iter().map(|&i| self.nodes[i].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.from] != usize::MAX && index[e.to] != usize::MAX)
            .map(|e| CigEdge {
                from: index[e.from],
                to: index[e.to],
                delay: e.delay,
            })
            .collect();
        Cig::from_parts(nodes, edges)
    }

    /// Debug text form: `n <id> <attr_u> <attr_e> <attr_v> <dur>` lines
    /// followed by `e <from> <to> <delay>` lines, deterministic order.
    pub fn to_debug_text(&self, vocab: &Vocab) -> String {
        let mut s = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            s.push_str(&format!(
                "n {} {} {} {} {}\n",
                i,
                vocab.attr_name(n.label.attr_u),
                vocab.attr_name(n.label.attr_e),
                vocab.attr_name(n.label.attr_v),
                n.label.dur
            ));
        }
        for e in &self.edges {
            s.push_str(&format!("e {} {} {}\n", e.from, e.to, e.delay));
        }
        s
    }
}

/// Builds the CIG of a start-sorted temporal network using per-vertex
/// interval trees: for each new edge, search both endpoint trees for
/// overlapping earlier edges, connect, then insert.
pub fn construct_cig(network: &TemporalNetwork) -> Cig {
    let mut nodes = Vec::with_capacity(network.edges.len());
    let mut edges = Vec::new();
    let mut trees: std::collections::HashMap<crate::vocab::VertexId, IntervalTree> =
        std::collections::HashMap::new();
    for (i, e) in network.edges.iter().enumerate() {
        let interval = e.interval();
        nodes.push(CigNode {
            label: NodeLabel {
                attr_u: e.attr_u,
                attr_e: e.attr_e,
                attr_v: e.attr_v,
                dur: TimeClass::exact(e.duration),
            },
            source_edge: Some(i),
        });
        // Both endpoint searches can report the same earlier edge when two
        // temporal edges share both endpoints; keep the CIG simple.
        let mut earlier: BTreeSet<usize> = BTreeSet::new();
        for vertex in [e.u, e.v] {
            if let Some(tree) = trees.get(&vertex) {
                for (_, payload) in tree.search_all(interval) {
                    earlier.insert(payload);
                }
            }
        }
        for j in earlier {
            let delay = e.start - network.edges[j].start;
            debug_assert!(delay >= 0.0);
            edges.push(CigEdge {
                from: j,
                to: i,
                delay: TimeClass::exact(delay),
            });
        }
        trees.entry(e.u).or_default().insert(interval, i);
        trees.entry(e.v).or_default().insert(interval, i);
    }
    Cig::from_parts(nodes, edges)
}

#[derive(Debug, Error)]
pub enum ReconstructError {
    #[error("pattern is disconnected in the undirected view")]
    Disconnected,
    #[error("pattern is empty")]
    Empty,
    #[error("support embedding maps {got} nodes, pattern has {want}")]
    SupportSize { got: usize, want: usize },
    #[error("support edge {edge} does not carry the label of pattern node {node}")]
    SupportLabelMismatch { node: usize, edge: usize },
    #[error("pattern labels are not exact real values; reconstruction needs raw times")]
    NonNumericLabel,
    #[error("inconsistent support: two paths imply different starts for node {0}")]
    InconsistentStart(usize),
}

/// Reconstructs the temporal network a connected CIG (sub)graph
/// represents, given one supporting embedding into `origin`
/// (`node_map[k]` = index of the temporal edge supporting pattern node
/// `k`). The smallest-id node anchors time zero; every other start is
/// fixed by traversal over the undirected tree, adding the delay when
/// following a stored edge direction and subtracting when going against
/// it. Output is re-based so the minimum start is 0.
pub fn reconstruct(
    pattern: &Cig,
    origin: &TemporalNetwork,
    node_map: &[usize],
    name: &str,
    time_eps: f64,
) -> Result<TemporalNetwork, ReconstructError> {
    let n = pattern.node_count();
    if n == 0 {
        return Err(ReconstructError::Empty);
    }
    if node_map.len() != n {
        return Err(ReconstructError::SupportSize {
            got: node_map.len(),
            want: n,
        });
    }
    // Every label and delay must be an exact real value.
    let durs: Vec<f64> = pattern
        .nodes
        .iter()
        .map(|nd| nd.label.dur.as_exact().ok_or(ReconstructError::NonNumericLabel))
        .collect::<Result<_, _>>()?;
    let delays: Vec<f64> = pattern
        .edges
        .iter()
        .map(|e| e.delay.as_exact().ok_or(ReconstructError::NonNumericLabel))
        .collect::<Result<_, _>>()?;
    for (k, nd) in pattern.nodes.iter().enumerate() {
        let se = &origin.edges[node_map[k]];
        let l = &nd.label;
        if se.attr_u != l.attr_u || se.attr_e != l.attr_e || se.attr_v != l.attr_v {
            return Err(ReconstructError::SupportLabelMismatch {
                node: k,
                edge: node_map[k],
            });
        }
    }
    // Propagate starts from node 0 over the undirected tree.
    let mut start = vec![f64::NAN; n];
    start[0] = 0.0;
    let mut stack = vec![0usize];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut reached = 1usize;
    while let Some(v) = stack.pop() {
        for &(u, ei) in &pattern.out[v] {
            if !visited[u] {
                visited[u] = true;
                reached += 1;
                start[u] = start[v] + delays[ei];
                stack.push(u);
            }
        }
        for &(u, ei) in &pattern.inn[v] {
            if !visited[u] {
                visited[u] = true;
                reached += 1;
                start[u] = start[v] - delays[ei];
                stack.push(u);
            }
        }
    }
    if reached != n {
        return Err(ReconstructError::Disconnected);
    }
    // Non-tree edges must agree with the propagated starts; a violation
    // signals a corrupt embedding.
    let tol = if time_eps > 0.0 { time_eps } else { 1e-9 };
    for (ei, e) in pattern.edges.iter().enumerate() {
        if (start[e.to] - start[e.from] - delays[ei]).abs() > tol {
            return Err(ReconstructError::InconsistentStart(e.to));
        }
    }
    let base = start.iter().cloned().fold(f64::INFINITY, f64::min);
    let edges: Vec<TemporalEdge> = pattern
        .nodes
        .iter()
        .enumerate()
        .map(|(k, _)| {
            let se = &origin.edges[node_map[k]];
            TemporalEdge {
                u: se.u,
                v: se.v,
                attr_u: se.attr_u,
                attr_e: se.attr_e,
                attr_v: se.attr_v,
                start: start[k] - base,
                duration: durs[k],
            }
        })
        .collect();
    Ok(TemporalNetwork::from_edges(name, edges))
}

/// The identity support of a full CIG: node `k` is supported by edge `k`
/// of the origin network.
pub fn identity_support(network: &TemporalNetwork) -> Vec<usize> {
    (0..network.edges.len()).collect()
}
