//! Mining the complete set of frequent temporal patterns from data sets
//! of continuous-time temporal networks.
//!
//! Each network is transformed into a constrained interval graph (CIG):
//! one node per timed edge, a directed edge between every pair of
//! overlapping edges that share an endpoint, labeled with the start-time
//! difference. A forward-growth pattern search with canonical-label
//! deduplication and per-network support counting then enumerates every
//! frequent pattern under one of four isomorphism relaxations.

pub mod canon;
pub mod cig;
pub mod interval_tree;
pub mod miner;
pub mod oracle;
pub mod par;
pub mod report;
pub mod temporal;
pub mod vocab;
