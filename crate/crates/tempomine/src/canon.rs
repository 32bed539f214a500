//! Canonical labeling of directed, node- and edge-labeled graphs via
//! minimum DFS codes, plus a brute-force isomorphism oracle for testing.
//!
//! Patterns must be traversable against stored edge direction, so the
//! traversal itself is undirected and each code step carries a flag for
//! the stored direction instead.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt::Write as _;
use std::hash::Hash;

use thiserror::Error;

use crate::cig::{Cig, NodeLabel, TimeClass};
use crate::vocab::Vocab;

/// Stored direction of an edge relative to the traversal step that
/// records it: `Out` means the edge points from the step's from-position
/// to its to-position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Out,
    In,
}

/// One step of a DFS code. `Node` is the degenerate form used only for
/// single-node graphs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Step<L, D> {
    Node(L),
    Edge {
        from: usize,
        to: usize,
        from_label: L,
        dir: Dir,
        delay: D,
        to_label: L,
    },
}

/// gSpan's neighborhood-restriction order on edge positions: forward
/// edges compare by (to asc, from desc), backward by (from asc, to asc),
/// and a backward edge (i, j) precedes a forward edge (i', j') iff
/// i < j', while a forward (i, j) precedes a backward (i', j') iff
/// j <= i'.
fn pos_cmp(a: (usize, usize), b: (usize, usize)) -> Ordering {
    let fwd_a = a.0 < a.1;
    let fwd_b = b.0 < b.1;
    match (fwd_a, fwd_b) {
        (true, true) => a.1.cmp(&b.1).then(b.0.cmp(&a.0)),
        (false, false) => a.0.cmp(&b.0).then(a.1.cmp(&b.1)),
        (true, false) => {
            if a.1 <= b.0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        (false, true) => {
            if a.0 < b.1 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

impl<L: Ord, D: Ord> Ord for Step<L, D> {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Step::Node(a), Step::Node(b)) => a.cmp(b),
            (Step::Node(_), Step::Edge { .. }) => Ordering::Less,
            (Step::Edge { .. }, Step::Node(_)) => Ordering::Greater,
            (
                Step::Edge {
                    from: f1,
                    to: t1,
                    from_label: fl1,
                    dir: d1,
                    delay: y1,
                    to_label: tl1,
                },
                Step::Edge {
                    from: f2,
                    to: t2,
                    from_label: fl2,
                    dir: d2,
                    delay: y2,
                    to_label: tl2,
                },
            ) => pos_cmp((*f1, *t1), (*f2, *t2))
                .then_with(|| fl1.cmp(fl2))
                .then_with(|| d1.cmp(d2))
                .then_with(|| y1.cmp(y2))
                .then_with(|| tl1.cmp(tl2)),
        }
    }
}

impl<L: Ord, D: Ord> PartialOrd for Step<L, D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A DFS code: the ordered step sequence of one rightmost-path DFS
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DfsCode<L, D> {
    pub steps: Vec<Step<L, D>>,
}

impl<L: Ord, D: Ord> Ord for DfsCode<L, D> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.steps.cmp(&other.steps)
    }
}

impl<L: Ord, D: Ord> PartialOrd for DfsCode<L, D> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<L: Clone, D: Clone> DfsCode<L, D> {
    pub fn node_count(&self) -> usize {
        match self.steps.first() {
            None => 0,
            Some(Step::Node(_)) => 1,
            Some(Step::Edge { .. }) => {
                1 + self
                    .steps
                    .iter()
                    .filter(|s| matches!(s, Step::Edge { from, to, .. } if from < to))
                    .count()
            }
        }
    }

    pub fn edge_count(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| matches!(s, Step::Edge { .. }))
            .count()
    }

    /// Rebuilds the labeled graph the code describes. Positions become
    /// node ids; stored edge directions come from the step flags.
    pub fn to_graph(&self) -> LabeledGraph<L, D> {
        let mut labels: Vec<Option<L>> = Vec::new();
        let mut edges = Vec::new();
        let set = |labels: &mut Vec<Option<L>>, pos: usize, l: &L| {
            if labels.len() <= pos {
                labels.resize(pos + 1, None);
            }
            if labels[pos].is_none() {
                labels[pos] = Some(l.clone());
            }
        };
        for step in &self.steps {
            match step {
                Step::Node(l) => set(&mut labels, 0, l),
                Step::Edge {
                    from,
                    to,
                    from_label,
                    dir,
                    delay,
                    to_label,
                } => {
                    set(&mut labels, *from, from_label);
                    set(&mut labels, *to, to_label);
                    let (a, b) = match dir {
                        Dir::Out => (*from, *to),
                        Dir::In => (*to, *from),
                    };
                    edges.push((a, b, delay.clone()));
                }
            }
        }
        LabeledGraph {
            labels: labels.into_iter().map(|l| l.unwrap()).collect(),
            edges,
        }
    }
}

/// A node- and edge-labeled directed graph in the minimal form the
/// canonicalizer needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph<L, D> {
    pub labels: Vec<L>,
    /// Directed edges (from, to, delay label).
    pub edges: Vec<(usize, usize, D)>,
}

impl<L, D> LabeledGraph<L, D> {
    fn adjacency(&self) -> Vec<Vec<(usize, usize, Dir)>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for (i, (a, b, _)) in self.edges.iter().enumerate() {
            adj[*a].push((*b, i, Dir::Out));
            adj[*b].push((*a, i, Dir::In));
        }
        adj
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonError {
    #[error("graph is empty")]
    Empty,
    #[error("graph is disconnected in the undirected view")]
    Disconnected,
    #[error("graph too large for the brute-force oracle: {0} nodes (cap {1})")]
    TooLarge(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct SearchState {
    /// position -> graph node
    map: Vec<usize>,
    /// graph node -> position
    at: Vec<Option<usize>>,
    /// rightmost path as positions, root first
    rm_path: Vec<usize>,
    covered: Vec<bool>,
}

impl SearchState {
    fn start(n_nodes: usize, n_edges: usize, a: usize, b: usize, edge: usize) -> Self {
        let mut at = vec![None; n_nodes];
        at[a] = Some(0);
        at[b] = Some(1);
        let mut covered = vec![false; n_edges];
        covered[edge] = true;
        SearchState {
            map: vec![a, b],
            at,
            rm_path: vec![0, 1],
            covered,
        }
    }
}

fn candidates<L: Clone, D: Clone>(
    g: &LabeledGraph<L, D>,
    adj: &[Vec<(usize, usize, Dir)>],
    st: &SearchState,
) -> Vec<(Step<L, D>, SearchState)> {
    let mut out = Vec::new();
    let rm_pos = *st.rm_path.last().unwrap();
    let rm_node = st.map[rm_pos];
    // Backward: uncovered edges from the rightmost vertex to a vertex on
    // the rightmost path.
    for &(other, eid, dir) in &adj[rm_node] {
        if st.covered[eid] {
            continue;
        }
        if let Some(j) = st.at[other] {
            if j != rm_pos && st.rm_path.contains(&j) {
                let mut next = st.clone();
                next.covered[eid] = true;
                out.push((
                    Step::Edge {
                        from: rm_pos,
                        to: j,
                        from_label: g.labels[rm_node].clone(),
                        dir,
                        delay: g.edges[eid].2.clone(),
                        to_label: g.labels[other].clone(),
                    },
                    next,
                ));
            }
        }
    }
    // Forward: uncovered edges from any rightmost-path vertex to an
    // unmapped neighbor.
    for (path_idx, &p) in st.rm_path.iter().enumerate() {
        let a = st.map[p];
        for &(other, eid, dir) in &adj[a] {
            if st.covered[eid] || st.at[other].is_some() {
                continue;
            }
            let new_pos = st.map.len();
            let mut next = st.clone();
            next.covered[eid] = true;
            next.map.push(other);
            next.at[other] = Some(new_pos);
            next.rm_path.truncate(path_idx + 1);
            next.rm_path.push(new_pos);
            out.push((
                Step::Edge {
                    from: p,
                    to: new_pos,
                    from_label: g.labels[a].clone(),
                    dir,
                    delay: g.edges[eid].2.clone(),
                    to_label: g.labels[other].clone(),
                },
                next,
            ));
        }
    }
    out
}

/// Computes the minimum DFS code over all rightmost-path enumerations.
/// Isomorphic graphs yield equal codes.
pub fn min_code<L, D>(g: &LabeledGraph<L, D>) -> Result<DfsCode<L, D>, CanonError>
where
    L: Ord + Clone + Hash + Eq,
    D: Ord + Clone + Hash + Eq,
{
    let n = g.labels.len();
    if n == 0 {
        return Err(CanonError::Empty);
    }
    if n == 1 {
        if !g.edges.is_empty() {
            // Self-loop; the CIG representation never produces one.
            return Err(CanonError::Disconnected);
        }
        return Ok(DfsCode {
            steps: vec![Step::Node(g.labels[0].clone())],
        });
    }
    if g.edges.is_empty() {
        return Err(CanonError::Disconnected);
    }
    let adj = g.adjacency();
    let m = g.edges.len();
    // Seed with both traversal orientations of every edge; keep only
    // realizations of the minimal first step.
    let mut best: Option<Step<L, D>> = None;
    let mut states: Vec<SearchState> = Vec::new();
    for (eid, (a, b, d)) in g.edges.iter().enumerate() {
        for (x, y, dir) in [(*a, *b, Dir::Out), (*b, *a, Dir::In)] {
            let step = Step::Edge {
                from: 0,
                to: 1,
                from_label: g.labels[x].clone(),
                dir,
                delay: d.clone(),
                to_label: g.labels[y].clone(),
            };
            match &best {
                Some(cur) if step.cmp(cur) == Ordering::Greater => {}
                Some(cur) if step.cmp(cur) == Ordering::Equal => {
                    states.push(SearchState::start(n, m, x, y, eid));
                }
                _ => {
                    best = Some(step);
                    states.clear();
                    states.push(SearchState::start(n, m, x, y, eid));
                }
            }
        }
    }
    let mut code = DfsCode {
        steps: vec![best.unwrap()],
    };
    for _ in 1..m {
        let mut best: Option<Step<L, D>> = None;
        let mut next_states: Vec<SearchState> = Vec::new();
        for st in &states {
            for (step, next) in candidates(g, &adj, st) {
                match &best {
                    Some(cur) => match step.cmp(cur) {
                        Ordering::Greater => {}
                        Ordering::Equal => next_states.push(next),
                        Ordering::Less => {
                            best = Some(step);
                            next_states.clear();
                            next_states.push(next);
                        }
                    },
                    None => {
                        best = Some(step);
                        next_states.push(next);
                    }
                }
            }
        }
        let Some(step) = best else {
            return Err(CanonError::Disconnected);
        };
        code.steps.push(step);
        // States can converge on the same mapping; dedup to bound fanout.
        let mut seen = HashSet::new();
        states = next_states
            .into_iter()
            .filter(|s| seen.insert(s.clone()))
            .collect();
    }
    if states[0].map.len() != n {
        return Err(CanonError::Disconnected);
    }
    Ok(code)
}

/// True iff `code` is the minimum DFS code of the graph it describes.
/// Used to prune duplicate growth branches before the expensive
/// reconstruct-and-relabel check.
pub fn is_min_code<L, D>(code: &DfsCode<L, D>) -> bool
where
    L: Ord + Clone + Hash + Eq,
    D: Ord + Clone + Hash + Eq,
{
    let g = code.to_graph();
    match min_code(&g) {
        Ok(min) => min == *code,
        Err(_) => false,
    }
}

/// Canonical label of a CIG: its minimum DFS code over quadruple node
/// labels and delay classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel(pub DfsCode<NodeLabel, TimeClass>);

impl CanonicalLabel {
    /// Deterministic text form used as the dedup key in output files.
    pub fn serialize(&self, vocab: &Vocab) -> String {
        let label = |l: &NodeLabel| {
            format!(
                "{}~{}~{}~{}",
                vocab.attr_name(l.attr_u),
                vocab.attr_name(l.attr_e),
                vocab.attr_name(l.attr_v),
                l.dur
            )
        };
        let mut s = String::new();
        for (i, step) in self.0.steps.iter().enumerate() {
            if i > 0 {
                s.push(';');
            }
            match step {
                Step::Node(l) => {
                    let _ = write!(s, "(0,0,{})", label(l));
                }
                Step::Edge {
                    from,
                    to,
                    from_label,
                    dir,
                    delay,
                    to_label,
                } => {
                    let arrow = match dir {
                        Dir::Out => '>',
                        Dir::In => '<',
                    };
                    let _ = write!(
                        s,
                        "({},{},{},{},{},{})",
                        from,
                        to,
                        label(from_label),
                        arrow,
                        delay,
                        label(to_label)
                    );
                }
            }
        }
        s
    }
}

pub fn cig_view(g: &Cig) -> LabeledGraph<NodeLabel, TimeClass> {
    LabeledGraph {
        labels: g.nodes.iter().map(|n| n.label).collect(),
        edges: g.edges.iter().map(|e| (e.from, e.to, e.delay)).collect(),
    }
}

pub fn canonical_label(g: &Cig) -> Result<CanonicalLabel, CanonError> {
    min_code(&cig_view(g)).map(CanonicalLabel)
}

const BRUTE_FORCE_CAP: usize = 10;

/// Factorial-search isomorphism: true iff a label-, direction-, and
/// delay-preserving node bijection exists.
pub fn brute_force_isomorphic(a: &Cig, b: &Cig) -> Result<bool, CanonError> {
    let n = a.node_count();
    if n > BRUTE_FORCE_CAP || b.node_count() > BRUTE_FORCE_CAP {
        return Err(CanonError::TooLarge(
            n.max(b.node_count()),
            BRUTE_FORCE_CAP,
        ));
    }
    if n != b.node_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    let b_edges: std::collections::HashMap<(usize, usize), TimeClass> = b
        .edges
        .iter()
        .map(|e| ((e.from, e.to), e.delay))
        .collect();
    let a_edges: Vec<(usize, usize, TimeClass)> =
        a.edges.iter().map(|e| (e.from, e.to, e.delay)).collect();
    fn extend(
        a: &Cig,
        b: &Cig,
        a_edges: &[(usize, usize, TimeClass)],
        b_edges: &std::collections::HashMap<(usize, usize), TimeClass>,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let k = perm.len();
        if k == a.node_count() {
            return a_edges
                .iter()
                .all(|(f, t, d)| b_edges.get(&(perm[*f], perm[*t])) == Some(d));
        }
        for cand in 0..b.node_count() {
            if used[cand] || a.nodes[k].label != b.nodes[cand].label {
                continue;
            }
            perm.push(cand);
            used[cand] = true;
            if extend(a, b, a_edges, b_edges, perm, used) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
        false
    }
    let mut perm = Vec::new();
    let mut used = vec![false; n];
    Ok(extend(a, b, &a_edges, &b_edges, &mut perm, &mut used))
}

/// Test-only exhaustive code enumeration: every valid rightmost-path DFS
/// code of the graph. Drives the `is_min_code` uniqueness oracle.
#[cfg(test)]
pub(crate) fn all_codes<L, D>(g: &LabeledGraph<L, D>) -> Vec<DfsCode<L, D>>
where
    L: Ord + Clone + Hash + Eq,
    D: Ord + Clone + Hash + Eq,
{
    let n = g.labels.len();
    if n == 1 {
        return vec![DfsCode {
            steps: vec![Step::Node(g.labels[0].clone())],
        }];
    }
    let adj = g.adjacency();
    let m = g.edges.len();
    let mut results = Vec::new();
    fn recurse<L, D>(
        g: &LabeledGraph<L, D>,
        adj: &[Vec<(usize, usize, Dir)>],
        st: &SearchState,
        steps: &mut Vec<Step<L, D>>,
        m: usize,
        results: &mut Vec<DfsCode<L, D>>,
    ) where
        L: Ord + Clone + Hash + Eq,
        D: Ord + Clone + Hash + Eq,
    {
        if steps.len() == m {
            if st.map.len() == g.labels.len() {
                results.push(DfsCode {
                    steps: steps.clone(),
                });
            }
            return;
        }
        for (step, next) in candidates(g, adj, st) {
            steps.push(step);
            recurse(g, adj, &next, steps, m, results);
            steps.pop();
        }
    }
    for (eid, (a, b, d)) in g.edges.iter().enumerate() {
        for (x, y, dir) in [(*a, *b, Dir::Out), (*b, *a, Dir::In)] {
            let st = SearchState::start(n, m, x, y, eid);
            let mut steps = vec![Step::Edge {
                from: 0,
                to: 1,
                from_label: g.labels[x].clone(),
                dir,
                delay: d.clone(),
                to_label: g.labels[y].clone(),
            }];
            recurse(g, &adj, &st, &mut steps, m, &mut results);
        }
    }
    results
}
