//! The frequent-pattern search: preprocessing with frequency-ordered
//! relabeling, isomorphism-mode label transformation, and recursive
//! forward-edge pattern growth with embedding-list support counting and
//! canonical-label deduplication.
//!
//! Support is per-network transaction counting: a network supports a
//! pattern when at least one embedding exists. Growth enumerates tree
//! patterns (gSpan rightmost extension, forward edges only); at every
//! tree the embeddings are grouped by the canonical label of the induced
//! data sub-CIG, so each emitted pattern is one temporal structure.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::canon::{self, CanonicalLabel, DfsCode, Dir, Step};
use crate::cig::{construct_cig, Cig, CigEdge, CigNode, NodeLabel, TimeClass};
use crate::temporal::DataSet;

/// The four isomorphism relaxations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoKind {
    /// Durations and delays compared exactly.
    Exact,
    /// Durations discretized by `duration_bin`, delays exact.
    Inexact,
    /// Durations exact, delays collapsed to one uniform token.
    ExactSeq,
    /// Both relaxations.
    InexactSeq,
}

impl IsoKind {
    pub fn flag(&self) -> &'static str {
        match self {
            IsoKind::Exact => "e",
            IsoKind::Inexact => "i",
            IsoKind::ExactSeq => "es",
            IsoKind::InexactSeq => "is",
        }
    }

    pub fn bins_durations(&self) -> bool {
        matches!(self, IsoKind::Inexact | IsoKind::InexactSeq)
    }

    pub fn uniform_delays(&self) -> bool {
        matches!(self, IsoKind::ExactSeq | IsoKind::InexactSeq)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IsoMode {
    pub kind: IsoKind,
    pub duration_bin: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub enum Support {
    Absolute(usize),
    Fraction(f64),
}

impl Support {
    /// Resolves to an absolute per-data-set count (fractions round up).
    pub fn resolve(&self, n_networks: usize) -> usize {
        match self {
            Support::Absolute(k) => *k,
            Support::Fraction(f) => (f * n_networks as f64).ceil().max(1.0) as usize,
        }
    }
}

impl std::str::FromStr for Support {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.contains('.') {
            let f: f64 = s.parse().map_err(|_| format!("invalid support `{s}`"))?;
            if f <= 0.0 || f > 1.0 {
                return Err(format!("fractional support must be in (0, 1], got {f}"));
            }
            Ok(Support::Fraction(f))
        } else {
            let k: usize = s.parse().map_err(|_| format!("invalid support `{s}`"))?;
            if k == 0 {
                return Err("absolute support must be >= 1".to_string());
            }
            Ok(Support::Absolute(k))
        }
    }
}

#[derive(Debug, Clone)]
pub struct MinerConfig {
    pub min_supp: Support,
    pub iso: IsoMode,
    /// Optional delay discretization, off by default.
    pub delay_bin: Option<f64>,
    /// Size-based pruning: cap on temporal edges per pattern.
    pub max_pattern_edges: Option<usize>,
    pub time_eps: f64,
    /// 0 means "library default" thread count.
    pub workers: usize,
}

impl MinerConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        match (self.iso.kind.bins_durations(), self.iso.duration_bin) {
            (true, None) => Err(ConfigError::MissingDurationBin(self.iso.kind.flag())),
            (false, Some(_)) => Err(ConfigError::UnexpectedDurationBin(self.iso.kind.flag())),
            (true, Some(b)) if b <= 0.0 => Err(ConfigError::BadBin(b)),
            _ => match self.delay_bin {
                Some(b) if b <= 0.0 => Err(ConfigError::BadBin(b)),
                _ => Ok(()),
            },
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("isomorphism mode `{0}` requires --duration-bin")]
    MissingDurationBin(&'static str),
    #[error("isomorphism mode `{0}` does not take --duration-bin")]
    UnexpectedDurationBin(&'static str),
    #[error("bin width must be positive, got {0}")]
    BadBin(f64),
}

fn bin(v: f64, width: f64) -> i64 {
    (v / width).floor() as i64
}

fn transform_cig(g: &Cig, iso: &IsoMode, delay_bin: Option<f64>) -> Cig {
    let nodes = g
        .nodes
        .iter()
        .map(|n| {
            let dur = match (iso.kind.bins_durations(), n.label.dur) {
                (true, TimeClass::Exact(v)) => TimeClass::Binned(bin(v.0, iso.duration_bin.unwrap())),
                (_, d) => d,
            };
            CigNode {
                label: NodeLabel { dur, ..n.label },
                source_edge: n.source_edge,
            }
        })
        .collect();
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let delay = if iso.kind.uniform_delays() {
                TimeClass::Uniform
            } else {
                match (delay_bin, e.delay) {
                    (Some(w), TimeClass::Exact(v)) => TimeClass::Binned(bin(v.0, w)),
                    (_, d) => d,
                }
            };
            CigEdge { delay, ..*e }
        })
        .collect();
    Cig::from_parts(nodes, edges)
}

/// Applies the isomorphism-mode relabeling to freshly constructed CIGs:
/// mode `e` is the identity, `i` bins durations, `es` collapses delays
/// to the uniform token, `is` does both.
pub fn transform_labels(cigs: &[Cig], iso: &IsoMode, delay_bin: Option<f64>) -> Vec<Cig> {
    cigs.iter().map(|g| transform_cig(g, iso, delay_bin)).collect()
}

/// One embedding: position `k` of the pattern maps to data-CIG node
/// `map[k]` of network `network`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub network: usize,
    pub map: Vec<usize>,
}

/// A data-set CIG prepared for mining: pruned of infrequent labels and
/// carrying dense relabeled node labels and edge delays alongside the
/// original (transformed) ones.
#[derive(Debug, Clone)]
pub struct MiningCig {
    /// Pruned graph used for growth and embedding extension.
    pub cig: Cig,
    /// Unpruned transformed graph; structure labels are induced here so
    /// a pattern's label reflects every edge among its temporal edges,
    /// including ones whose delay class fell below the threshold.
    pub full: Cig,
    /// Pruned node index -> node index in `full`.
    pub to_full: Vec<usize>,
    pub dense_labels: Vec<u32>,
    pub dense_delays: Vec<u32>,
}

/// The seed vocabulary entry for one frequent 1-edge pattern type,
/// identified by its canonical 2-node code over dense labels.
#[derive(Debug, Clone)]
pub struct SeedEdge {
    pub code: DfsCode<u32, u32>,
    pub embeddings: Vec<Embedding>,
    pub support: usize,
}

/// One frequent single-node label with its embedding locations.
#[derive(Debug, Clone)]
pub struct SeedNode {
    pub dense_label: u32,
    pub embeddings: Vec<Embedding>,
    pub support: usize,
}

#[derive(Debug, Clone)]
pub struct Preprocessed {
    pub cigs: Vec<MiningCig>,
    /// Dense node label -> original quadruple, descending support order.
    pub node_vocab: Vec<NodeLabel>,
    /// Dense delay label -> original delay class, descending support order.
    pub delay_vocab: Vec<TimeClass>,
    pub one_node_map: Vec<SeedNode>,
    pub one_edge_map: Vec<SeedEdge>,
    pub min_supp: usize,
}

fn per_network_support<T: Ord + Clone>(per_network: &[BTreeSet<T>]) -> BTreeMap<T, usize> {
    let mut counts = BTreeMap::new();
    for set in per_network {
        for item in set {
            *counts.entry(item.clone()).or_insert(0) += 1;
        }
    }
    counts
}

/// Converts every network to its transformed CIG, removes node and edge
/// labels with per-network support below the threshold, relabels the
/// survivors to dense integers in descending support order, and builds
/// the frequent single-node and single-edge maps.
pub fn preprocess(ds: &DataSet, config: &MinerConfig) -> Result<Preprocessed, ConfigError> {
    config.validate()?;
    let min_supp = config.min_supp.resolve(ds.len());
    let raw: Vec<Cig> = crate::par::map(&ds.networks, construct_cig, config.workers);
    let transformed = transform_labels(&raw, &config.iso, config.delay_bin);

    let node_sets: Vec<BTreeSet<NodeLabel>> = transformed
        .iter()
        .map(|g| g.nodes.iter().map(|n| n.label).collect())
        .collect();
    let delay_sets: Vec<BTreeSet<TimeClass>> = transformed
        .iter()
        .map(|g| g.edges.iter().map(|e| e.delay).collect())
        .collect();
    let node_counts = per_network_support(&node_sets);
    let delay_counts = per_network_support(&delay_sets);

    // Dense ids in descending support order, ties by label order.
    let mut node_vocab: Vec<(NodeLabel, usize)> = node_counts
        .iter()
        .filter(|(_, &c)| c >= min_supp)
        .map(|(l, &c)| (*l, c))
        .collect();
    node_vocab.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut delay_vocab: Vec<(TimeClass, usize)> = delay_counts
        .iter()
        .filter(|(_, &c)| c >= min_supp)
        .map(|(l, &c)| (*l, c))
        .collect();
    delay_vocab.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let node_index: HashMap<NodeLabel, u32> = node_vocab
        .iter()
        .enumerate()
        .map(|(i, (l, _))| (*l, i as u32))
        .collect();
    let delay_index: HashMap<TimeClass, u32> = delay_vocab
        .iter()
        .enumerate()
        .map(|(i, (l, _))| (*l, i as u32))
        .collect();

    // Prune and renumber each CIG.
    let cigs: Vec<MiningCig> = transformed
        .iter()
        .map(|g| {
            let keep: Vec<usize> = (0..g.node_count())
                .filter(|&i| node_index.contains_key(&g.nodes[i].label))
                .collect();
            let mut renum = vec![usize::MAX; g.node_count()];
            for (new, &old) in keep.iter().enumerate() {
                renum[old] = new;
            }
            let nodes: Vec<CigNode> = keep.iter().map(|&i| g.nodes[i].clone()).collect();
            let edges: Vec<CigEdge> = g
                .edges
                .iter()
                .filter(|e| {
                    renum[e.from] != usize::MAX
                        && renum[e.to] != usize::MAX
                        && delay_index.contains_key(&e.delay)
                })
                .map(|e| CigEdge {
                    from: renum[e.from],
                    to: renum[e.to],
                    delay: e.delay,
                })
                .collect();
            let cig = Cig::from_parts(nodes, edges);
            let dense_labels = cig.nodes.iter().map(|n| node_index[&n.label]).collect();
            let dense_delays = cig.edges.iter().map(|e| delay_index[&e.delay]).collect();
            MiningCig {
                cig,
                full: g.clone(),
                to_full: keep,
                dense_labels,
                dense_delays,
            }
        })
        .collect();

    // Frequent single-node map.
    let mut one_node_map: Vec<SeedNode> = node_vocab
        .iter()
        .enumerate()
        .map(|(dense, (_, support))| SeedNode {
            dense_label: dense as u32,
            embeddings: Vec::new(),
            support: *support,
        })
        .collect();
    for (net, mc) in cigs.iter().enumerate() {
        for (i, &l) in mc.dense_labels.iter().enumerate() {
            one_node_map[l as usize].embeddings.push(Embedding {
                network: net,
                map: vec![i],
            });
        }
    }

    // Frequent single-edge map, keyed by the canonical 2-node code.
    let mut edge_groups: BTreeMap<DfsCode<u32, u32>, Vec<Embedding>> = BTreeMap::new();
    for (net, mc) in cigs.iter().enumerate() {
        for (ei, e) in mc.cig.edges.iter().enumerate() {
            let (a, b) = (e.from, e.to);
            let d = mc.dense_delays[ei];
            let (la, lb) = (mc.dense_labels[a], mc.dense_labels[b]);
            let fwd = Step::Edge {
                from: 0,
                to: 1,
                from_label: la,
                dir: Dir::Out,
                delay: d,
                to_label: lb,
            };
            let rev = Step::Edge {
                from: 0,
                to: 1,
                from_label: lb,
                dir: Dir::In,
                delay: d,
                to_label: la,
            };
            let (step, map) = if fwd <= rev {
                (fwd, vec![a, b])
            } else {
                (rev, vec![b, a])
            };
            edge_groups
                .entry(DfsCode { steps: vec![step] })
                .or_default()
                .push(Embedding { network: net, map });
        }
    }
    let one_edge_map: Vec<SeedEdge> = edge_groups
        .into_iter()
        .filter_map(|(code, embeddings)| {
            let support = distinct_networks(&embeddings);
            (support >= min_supp).then_some(SeedEdge {
                code,
                embeddings,
                support,
            })
        })
        .collect();

    Ok(Preprocessed {
        cigs,
        node_vocab: node_vocab.into_iter().map(|(l, _)| l).collect(),
        delay_vocab: delay_vocab.into_iter().map(|(l, _)| l).collect(),
        one_node_map,
        one_edge_map,
        min_supp,
    })
}

fn distinct_networks(embeddings: &[Embedding]) -> usize {
    let nets: BTreeSet<usize> = embeddings.iter().map(|e| e.network).collect();
    nets.len()
}

fn supporting_networks(embeddings: &[Embedding]) -> Vec<usize> {
    let nets: BTreeSet<usize> = embeddings.iter().map(|e| e.network).collect();
    nets.into_iter().collect()
}

/// One emitted frequent pattern: a canonical-label-distinct temporal
/// structure with its per-network embedding lists.
#[derive(Debug, Clone)]
pub struct Pattern {
    /// Canonical label of the full CIG in the original (transformed)
    /// label space.
    pub label: CanonicalLabel,
    /// Number of temporal edges (CIG nodes) in the structure.
    pub temporal_edges: usize,
    pub support: usize,
    /// Supporting network indices, ascending.
    pub networks: Vec<usize>,
    pub embeddings: Vec<Embedding>,
    /// One concrete supporting instance, as temporal-edge indices into
    /// the origin network's edge list.
    pub representative: Representative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representative {
    pub network: usize,
    pub edge_ids: Vec<usize>,
}

/// Priority tag used to merge duplicate discoveries deterministically:
/// the same structure found under two growth trees keeps the record from
/// the smaller (seed index, tree code).
type Tag = (usize, DfsCode<u32, u32>);

struct Emission {
    tag: Tag,
    pattern: Pattern,
}

struct SeedContext<'a> {
    pre: &'a Preprocessed,
    seed_idx: usize,
    /// Canonical 1-edge codes of the still-allowed extension vocabulary
    /// (the current seed and every later one).
    vocab: HashSet<DfsCode<u32, u32>>,
    max_nodes: usize,
    label_cache: HashMap<(usize, Vec<usize>), CanonicalLabel>,
    emissions: Vec<Emission>,
}

impl SeedContext<'_> {
    fn structure_label(&mut self, emb: &Embedding) -> CanonicalLabel {
        let mc = &self.pre.cigs[emb.network];
        let mut nodes: Vec<usize> = emb.map.iter().map(|&i| mc.to_full[i]).collect();
        nodes.sort_unstable();
        let key = (emb.network, nodes);
        if let Some(l) = self.label_cache.get(&key) {
            return l.clone();
        }
        let induced = mc.full.induced(&key.1);
        let label = canon::canonical_label(&induced)
            .expect("embedding induces a connected non-empty subgraph");
        self.label_cache.insert(key, label.clone());
        label
    }

    /// Groups a tree's embeddings by induced-structure label and records
    /// every group meeting the threshold.
    fn emit_groups(&mut self, code: &DfsCode<u32, u32>, embeddings: &[Embedding]) {
        let mut groups: BTreeMap<CanonicalLabel, Vec<Embedding>> = BTreeMap::new();
        for emb in embeddings {
            let label = self.structure_label(emb);
            groups.entry(label).or_default().push(emb.clone());
        }
        for (label, group) in groups {
            let networks = supporting_networks(&group);
            if networks.len() < self.pre.min_supp {
                continue;
            }
            let rep = &group[0];
            let mc = &self.pre.cigs[rep.network];
            let representative = Representative {
                network: rep.network,
                edge_ids: rep
                    .map
                    .iter()
                    .map(|&n| mc.cig.nodes[n].source_edge.expect("data CIG node"))
                    .collect(),
            };
            self.emissions.push(Emission {
                tag: (self.seed_idx, code.clone()),
                pattern: Pattern {
                    label,
                    temporal_edges: group[0].map.len(),
                    support: networks.len(),
                    networks,
                    embeddings: group,
                    representative,
                },
            });
        }
    }

    /// Canonical 1-edge code for a data edge type, used for vocabulary
    /// membership checks during extension.
    fn edge_type_code(la: u32, d: u32, lb: u32) -> DfsCode<u32, u32> {
        let fwd = Step::Edge {
            from: 0,
            to: 1,
            from_label: la,
            dir: Dir::Out,
            delay: d,
            to_label: lb,
        };
        let rev = Step::Edge {
            from: 0,
            to: 1,
            from_label: lb,
            dir: Dir::In,
            delay: d,
            to_label: la,
        };
        DfsCode {
            steps: vec![if fwd <= rev { fwd } else { rev }],
        }
    }

    fn grow(&mut self, code: &DfsCode<u32, u32>, embeddings: &[Embedding], support: usize) {
        self.emit_groups(code, embeddings);
        let n_nodes = code.node_count();
        if n_nodes >= self.max_nodes {
            return;
        }
        let rm_path = rightmost_path(code);
        // Collect distinct candidate forward extensions from the data.
        let mut cands: BTreeSet<Step<u32, u32>> = BTreeSet::new();
        for emb in embeddings {
            let mc = &self.pre.cigs[emb.network];
            for &p in &rm_path {
                let node = emb.map[p];
                for &(nbr, ei) in mc.cig.out[node].iter() {
                    if emb.map.contains(&nbr) {
                        continue;
                    }
                    self.push_candidate(&mut cands, mc, p, n_nodes, node, nbr, ei, Dir::Out);
                }
                for &(nbr, ei) in mc.cig.inn[node].iter() {
                    if emb.map.contains(&nbr) {
                        continue;
                    }
                    self.push_candidate(&mut cands, mc, p, n_nodes, node, nbr, ei, Dir::In);
                }
            }
        }
        for step in cands {
            let mut child = code.clone();
            child.steps.push(step.clone());
            if !canon::is_min_code(&child) {
                continue;
            }
            let child_embeddings = extend_embeddings(self.pre, embeddings, &step);
            let child_support = distinct_networks(&child_embeddings);
            // Downward closure must hold for tree embeddings.
            assert!(
                child_support <= support,
                "downward closure violated: child {child_support} > parent {support}"
            );
            if child_support < self.pre.min_supp {
                continue;
            }
            self.grow(&child, &child_embeddings, child_support);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn push_candidate(
        &self,
        cands: &mut BTreeSet<Step<u32, u32>>,
        mc: &MiningCig,
        p: usize,
        n_nodes: usize,
        node: usize,
        nbr: usize,
        ei: usize,
        dir: Dir,
    ) {
        let d = mc.dense_delays[ei];
        let (lf, lt) = (mc.dense_labels[node], mc.dense_labels[nbr]);
        let type_code = match dir {
            Dir::Out => Self::edge_type_code(lf, d, lt),
            Dir::In => Self::edge_type_code(lt, d, lf),
        };
        if !self.vocab.contains(&type_code) {
            return;
        }
        cands.insert(Step::Edge {
            from: p,
            to: n_nodes,
            from_label: lf,
            dir,
            delay: d,
            to_label: lt,
        });
    }
}

fn rightmost_path(code: &DfsCode<u32, u32>) -> Vec<usize> {
    let n = code.node_count();
    let mut parent = vec![usize::MAX; n];
    for step in &code.steps {
        if let Step::Edge { from, to, .. } = step {
            if from < to {
                parent[*to] = *from;
            }
        }
    }
    let mut path = vec![n - 1];
    let mut cur = n - 1;
    while parent[cur] != usize::MAX {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn extend_embeddings(
    pre: &Preprocessed,
    parents: &[Embedding],
    step: &Step<u32, u32>,
) -> Vec<Embedding> {
    let Step::Edge {
        from,
        dir,
        delay,
        to_label,
        ..
    } = step
    else {
        unreachable!("extensions are always edge steps");
    };
    let mut out = Vec::new();
    for emb in parents {
        let mc = &pre.cigs[emb.network];
        let node = emb.map[*from];
        let adj = match dir {
            Dir::Out => &mc.cig.out[node],
            Dir::In => &mc.cig.inn[node],
        };
        for &(nbr, ei) in adj {
            if mc.dense_delays[ei] == *delay
                && mc.dense_labels[nbr] == *to_label
                && !emb.map.contains(&nbr)
            {
                let mut map = emb.map.clone();
                map.push(nbr);
                out.push(Embedding {
                    network: emb.network,
                    map,
                });
            }
        }
    }
    out
}

/// Runs the full search and returns every frequent pattern, deduplicated
/// by canonical label and sorted by it. Output is deterministic for a
/// fixed config regardless of worker count.
pub fn mine(ds: &DataSet, config: &MinerConfig) -> Result<Vec<Pattern>, ConfigError> {
    let pre = preprocess(ds, config)?;
    let max_nodes = config.max_pattern_edges.unwrap_or(usize::MAX);

    // Frequent single-node patterns are emitted alongside grown ones.
    let mut merged: HashMap<CanonicalLabel, (Option<Tag>, Pattern)> = HashMap::new();
    for seed in &pre.one_node_map {
        if seed.support < pre.min_supp {
            continue;
        }
        let orig = pre.node_vocab[seed.dense_label as usize];
        let label = CanonicalLabel(DfsCode {
            steps: vec![Step::Node(orig)],
        });
        let rep = &seed.embeddings[0];
        let representative = Representative {
            network: rep.network,
            edge_ids: vec![pre.cigs[rep.network].cig.nodes[rep.map[0]]
                .source_edge
                .expect("data CIG node")],
        };
        let pattern = Pattern {
            label: label.clone(),
            temporal_edges: 1,
            support: seed.support,
            networks: supporting_networks(&seed.embeddings),
            embeddings: seed.embeddings.clone(),
            representative,
        };
        merged.insert(label, (None, pattern));
    }

    // One growth task per seed edge; the vocabulary shrinks with the
    // seed index so each tree is generated under exactly one seed.
    let seeds: Vec<usize> = (0..pre.one_edge_map.len()).collect();
    let per_seed: Vec<Vec<Emission>> = crate::par::map(
        &seeds,
        |&seed_idx| {
            let vocab: HashSet<DfsCode<u32, u32>> = pre.one_edge_map[seed_idx..]
                .iter()
                .map(|s| s.code.clone())
                .collect();
            let seed = &pre.one_edge_map[seed_idx];
            let mut ctx = SeedContext {
                pre: &pre,
                seed_idx,
                vocab,
                max_nodes,
                label_cache: HashMap::new(),
                emissions: Vec::new(),
            };
            ctx.grow(&seed.code, &seed.embeddings, seed.support);
            ctx.emissions
        },
        config.workers,
    );

    // Deterministic merge: for each structure, the smallest tag wins.
    for emission in per_seed.into_iter().flatten() {
        match merged.get_mut(&emission.pattern.label) {
            Some((existing_tag, existing)) => {
                let replace = match existing_tag {
                    None => false,
                    Some(t) => emission.tag < *t,
                };
                if replace {
                    *existing_tag = Some(emission.tag);
                    *existing = emission.pattern;
                }
            }
            None => {
                merged.insert(
                    emission.pattern.label.clone(),
                    (Some(emission.tag), emission.pattern),
                );
            }
        }
    }

    let mut patterns: Vec<Pattern> = merged.into_values().map(|(_, p)| p).collect();
    patterns.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(patterns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::temporal::parse_edge_list;
    use crate::vocab::Vocab;
    use std::io::Cursor;

    fn ds(texts: &[&str], vocab: &mut Vocab) -> DataSet {
        let mut ds = DataSet::default();
        for (i, t) in texts.iter().enumerate() {
            ds.push(parse_edge_list(Cursor::new(*t), &format!("n{i}"), vocab, 0.0).unwrap())
                .unwrap();
        }
        ds
    }

    fn cfg(min_supp: usize, kind: IsoKind, duration_bin: Option<f64>) -> MinerConfig {
        MinerConfig {
            min_supp: Support::Absolute(min_supp),
            iso: IsoMode { kind, duration_bin },
            delay_bin: None,
            max_pattern_edges: None,
            time_eps: 0.0,
            workers: 1,
        }
    }

    #[test]
    fn transform_modes() {
        let mut vocab = Vocab::new();
        let d = ds(&["A B x y x 0 7\nB C x y x 1 9\nC D x y x 2 10\n"], &mut vocab);
        let raw = vec![construct_cig(&d.networks[0])];
        // Mode e: identity.
        let e = transform_labels(
            &raw,
            &IsoMode {
                kind: IsoKind::Exact,
                duration_bin: None,
            },
            None,
        );
        assert_eq!(e[0].nodes[0].label, raw[0].nodes[0].label);
        // Mode i, bin 5: durations 7, 9, 10 -> classes 1, 1, 2.
        let i = transform_labels(
            &raw,
            &IsoMode {
                kind: IsoKind::Inexact,
                duration_bin: Some(5.0),
            },
            None,
        );
        let durs: Vec<TimeClass> = i[0].nodes.iter().map(|n| n.label.dur).collect();
        assert_eq!(
            durs,
            vec![
                TimeClass::Binned(1),
                TimeClass::Binned(1),
                TimeClass::Binned(2)
            ]
        );
        // Delays unchanged under i.
        assert_eq!(i[0].edges[0].delay, raw[0].edges[0].delay);
        // Mode is: delays uniform, direction preserved.
        let is = transform_labels(
            &raw,
            &IsoMode {
                kind: IsoKind::InexactSeq,
                duration_bin: Some(5.0),
            },
            None,
        );
        assert!(is[0].edges.iter().all(|e| e.delay == TimeClass::Uniform));
        assert_eq!(is[0].edges[0].from, raw[0].edges[0].from);
    }

    #[test]
    fn missing_duration_bin_is_config_error() {
        let c = cfg(1, IsoKind::Inexact, None);
        assert!(matches!(
            c.validate(),
            Err(ConfigError::MissingDurationBin("i"))
        ));
    }

    #[test]
    fn preprocess_identical_one_edge_networks() {
        let mut vocab = Vocab::new();
        let text = "A B x y x 0 2\n";
        let d = ds(&[text, text, text], &mut vocab);
        let pre = preprocess(&d, &cfg(3, IsoKind::Exact, None)).unwrap();
        assert_eq!(pre.node_vocab.len(), 1);
        assert_eq!(pre.one_node_map[0].support, 3);
        assert!(pre.one_edge_map.is_empty());
    }

    #[test]
    fn preprocess_min_supp_above_ds_size() {
        let mut vocab = Vocab::new();
        let d = ds(&["A B x y x 0 2\n"], &mut vocab);
        let pre = preprocess(&d, &cfg(2, IsoKind::Exact, None)).unwrap();
        assert!(pre.node_vocab.is_empty());
        assert!(pre.one_edge_map.is_empty());
    }

    #[test]
    fn preprocess_supports_match_counting_oracle() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let mut vocab = Vocab::new();
        let texts: Vec<String> = (0..8)
            .map(|_| {
                let m = rng.gen_range(1..6);
                (0..m)
                    .map(|_| {
                        let u = rng.gen_range(0..4);
                        let v = (u + rng.gen_range(1..4)) % 5;
                        format!(
                            "v{} v{} a{} e a{} {} {}\n",
                            u,
                            v,
                            rng.gen_range(0..2),
                            rng.gen_range(0..2),
                            rng.gen_range(0..6),
                            rng.gen_range(0..4)
                        )
                    })
                    .collect()
            })
            .collect();
        let refs: Vec<&str> = texts.iter().map(|s| s.as_str()).collect();
        let d = ds(&refs, &mut vocab);
        let config = cfg(2, IsoKind::Exact, None);
        let pre = preprocess(&d, &config).unwrap();
        // Counting oracle: per-label support by direct scan of raw CIGs.
        let raw: Vec<Cig> = d.networks.iter().map(construct_cig).collect();
        for (dense, orig) in pre.node_vocab.iter().enumerate() {
            let count = raw
                .iter()
                .filter(|g| g.nodes.iter().any(|n| n.label == *orig))
                .count();
            assert_eq!(pre.one_node_map[dense].support, count);
            assert!(count >= 2);
        }
    }

    #[test]
    fn mine_empty_when_threshold_exceeds_ds() {
        let mut vocab = Vocab::new();
        let d = ds(&["A B x y x 0 2\n"], &mut vocab);
        let patterns = mine(&d, &cfg(2, IsoKind::Exact, None)).unwrap();
        assert!(patterns.is_empty());
    }

    #[test]
    fn mine_finds_shared_single_edge() {
        let mut vocab = Vocab::new();
        let d = ds(
            &[
                "A B x y x 0 1\nC D q q q 5 1\n",
                "A B x y x 3 1\nE F r r r 9 1\n",
                "A B x y x 7 1\n",
            ],
            &mut vocab,
        );
        let patterns = mine(&d, &cfg(3, IsoKind::Exact, None)).unwrap();
        assert_eq!(patterns.len(), 1);
        assert_eq!(patterns[0].support, 3);
        assert_eq!(patterns[0].temporal_edges, 1);
    }

    #[test]
    fn mine_two_edge_chain() {
        let mut vocab = Vocab::new();
        let text = "A B x y x 0 2\nB C x y x 1 2\n";
        let d = ds(&[text, text], &mut vocab);
        let patterns = mine(&d, &cfg(2, IsoKind::Exact, None)).unwrap();
        // 1-node pattern, and the 2-node chain.
        assert_eq!(patterns.len(), 2);
        let sizes: BTreeSet<usize> = patterns.iter().map(|p| p.temporal_edges).collect();
        assert_eq!(sizes, BTreeSet::from([1, 2]));
        assert!(patterns.iter().all(|p| p.support == 2));
    }

    #[test]
    fn max_pattern_edges_caps_growth() {
        let mut vocab = Vocab::new();
        let text = "A B x y x 0 9\nB C x y x 1 9\nC D x y x 2 9\n";
        let d = ds(&[text, text], &mut vocab);
        let mut c = cfg(2, IsoKind::Exact, None);
        c.max_pattern_edges = Some(2);
        let patterns = mine(&d, &c).unwrap();
        assert!(patterns.iter().all(|p| p.temporal_edges <= 2));
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let mut vocab = Vocab::new();
        let text = "A B x y x 0 5\nB C x y x 1 5\nA C x y x 2 5\nC D z y z 3 5\n";
        let d = ds(&[text, text, text], &mut vocab);
        let mut c1 = cfg(2, IsoKind::Exact, None);
        c1.workers = 1;
        let mut c8 = cfg(2, IsoKind::Exact, None);
        c8.workers = 8;
        let p1 = mine(&d, &c1).unwrap();
        let p8 = mine(&d, &c8).unwrap();
        assert_eq!(p1.len(), p8.len());
        for (a, b) in p1.iter().zip(p8.iter()) {
            assert_eq!(a.label, b.label);
            assert_eq!(a.support, b.support);
            assert_eq!(a.embeddings, b.embeddings);
        }
    }
}
