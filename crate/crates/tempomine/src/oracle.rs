//! Exhaustive reference miner for small instances: enumerates every
//! connected temporal subgraph of every network by subset expansion over
//! CIG nodes, groups by full-CIG canonical label after the isomorphism
//! transform, and counts per-network support. Intended as ground truth
//! for the grown search on data sets within the edge cap.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::canon::{self, CanonicalLabel};
use crate::cig::{construct_cig, Cig};
use crate::miner::{transform_labels, ConfigError, Embedding, MinerConfig, Pattern, Representative};
use crate::temporal::DataSet;

pub const DEFAULT_EDGE_CAP: usize = 8;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("network `{name}` has {edges} temporal edges, above the oracle cap of {cap}")]
    CapExceeded {
        name: String,
        edges: usize,
        cap: usize,
    },
}

fn connected_under_mask(g: &Cig, nodes: &[usize]) -> bool {
    if nodes.is_empty() {
        return false;
    }
    let in_set = |v: usize| nodes.contains(&v);
    let mut seen = vec![nodes[0]];
    let mut stack = vec![nodes[0]];
    while let Some(v) = stack.pop() {
        for &(n, _) in g.out[v].iter().chain(g.inn[v].iter()) {
            if in_set(n) && !seen.contains(&n) {
                seen.push(n);
                stack.push(n);
            }
        }
    }
    seen.len() == nodes.len()
}

/// Mines by brute force. Every network must have at most `edge_cap`
/// temporal edges; returns the complete frequent set, sorted by
/// canonical label, in the same shape as [`crate::miner::mine`].
///
/// Embedding maps here list the subset's CIG node ids in ascending
/// order rather than pattern-position order.
pub fn mine_exhaustive(
    ds: &DataSet,
    config: &MinerConfig,
    edge_cap: usize,
) -> Result<Vec<Pattern>, OracleError> {
    config.validate()?;
    for n in &ds.networks {
        if n.edges.len() > edge_cap {
            return Err(OracleError::CapExceeded {
                name: n.name.clone(),
                edges: n.edges.len(),
                cap: edge_cap,
            });
        }
    }
    let min_supp = config.min_supp.resolve(ds.len());
    let raw: Vec<Cig> = ds.networks.iter().map(construct_cig).collect();
    let cigs = transform_labels(&raw, &config.iso, config.delay_bin);

    // label -> per-network embedding lists.
    let mut groups: BTreeMap<CanonicalLabel, Vec<Embedding>> = BTreeMap::new();
    for (net, g) in cigs.iter().enumerate() {
        let n = g.node_count();
        for mask in 1u32..(1u32 << n) {
            let nodes: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            if !connected_under_mask(g, &nodes) {
                continue;
            }
            let label = canon::canonical_label(&g.induced(&nodes))
                .expect("connected non-empty subset");
            groups.entry(label).or_default().push(Embedding {
                network: net,
                map: nodes,
            });
        }
    }

    let patterns = groups
        .into_iter()
        .filter_map(|(label, embeddings)| {
            let networks: Vec<usize> = {
                let mut nets: Vec<usize> = embeddings.iter().map(|e| e.network).collect();
                nets.dedup();
                nets
            };
            if networks.len() < min_supp {
                return None;
            }
            let rep = &embeddings[0];
            let representative = Representative {
                network: rep.network,
                edge_ids: rep
                    .map
                    .iter()
                    .map(|&n| cigs[rep.network].nodes[n].source_edge.expect("data CIG node"))
                    .collect(),
            };
            Some(Pattern {
                label,
                temporal_edges: embeddings[0].map.len(),
                support: networks.len(),
                networks,
                embeddings,
                representative,
            })
        })
        .collect();
    Ok(patterns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miner::{self, IsoKind, IsoMode, Support};
    use crate::temporal::parse_edge_list;
    use crate::vocab::Vocab;
    use std::io::Cursor;

    fn cfg(min_supp: usize) -> MinerConfig {
        MinerConfig {
            min_supp: Support::Absolute(min_supp),
            iso: IsoMode {
                kind: IsoKind::Exact,
                duration_bin: None,
            },
            delay_bin: None,
            max_pattern_edges: None,
            time_eps: 0.0,
            workers: 1,
        }
    }

    #[test]
    fn single_edge_network_yields_one_pattern() {
        let mut vocab = Vocab::new();
        let mut ds = DataSet::default();
        ds.push(
            parse_edge_list(Cursor::new("A B x y x 0 2\n"), "n0", &mut vocab, 0.0).unwrap(),
        )
        .unwrap();
        let patterns = mine_exhaustive(&ds, &cfg(1), DEFAULT_EDGE_CAP).unwrap();
        assert_eq!(patterns.len(), 1);
        assert_eq!(patterns[0].temporal_edges, 1);
        assert_eq!(patterns[0].support, 1);
    }

    #[test]
    fn cap_exceeded_is_refused() {
        let mut vocab = Vocab::new();
        let text: String = (0..4).map(|i| format!("A B x y x {i}0 2\n")).collect();
        let mut ds = DataSet::default();
        ds.push(parse_edge_list(Cursor::new(text), "big", &mut vocab, 0.0).unwrap())
            .unwrap();
        let err = mine_exhaustive(&ds, &cfg(1), 3).unwrap_err();
        assert!(matches!(err, OracleError::CapExceeded { edges: 4, cap: 3, .. }));
    }

    #[test]
    fn agrees_with_grown_miner_on_chain() {
        let mut vocab = Vocab::new();
        let text = "A B x y x 0 4\nB C x y x 1 4\nC D x y x 2 4\n";
        let mut ds = DataSet::default();
        for i in 0..2 {
            ds.push(
                parse_edge_list(Cursor::new(text), &format!("n{i}"), &mut vocab, 0.0).unwrap(),
            )
            .unwrap();
        }
        let config = cfg(2);
        let oracle = mine_exhaustive(&ds, &config, DEFAULT_EDGE_CAP).unwrap();
        let mined = miner::mine(&ds, &config).unwrap();
        let key = |ps: &[Pattern]| -> Vec<(CanonicalLabel, usize)> {
            ps.iter().map(|p| (p.label.clone(), p.support)).collect()
        };
        assert_eq!(key(&oracle), key(&mined));
    }
}
