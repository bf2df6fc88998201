//! Shared corpora and independent checks for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use agforest::generate::{exhaustive_pairs, generate_pair, DEFAULT_CONTRACTION};
use agforest::{Cluster, Forest, NodeId, PhyloTree};

/// Every first-tree shape against every labelled second tree for
/// `n = 1..=max_n`.
pub fn exhaustive_corpus(max_n: usize) -> Vec<(PhyloTree, PhyloTree)> {
    (1..=max_n).flat_map(exhaustive_pairs).collect()
}

/// Random pairs on `n` leaves with one to four prune-and-regraft moves.
pub fn random_corpus(n: usize, count: usize, seed: u64) -> Vec<(PhyloTree, PhyloTree)> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
            generate_pair(n, 1 + (i as usize % 4), s, DEFAULT_CONTRACTION)
        })
        .collect()
}

/// The acceptance corpus: exhaustive up to five leaves plus 500 random pairs
/// on six.
pub fn acceptance_corpus() -> Vec<(PhyloTree, PhyloTree)> {
    let mut c = exhaustive_corpus(5);
    c.extend(random_corpus(6, 500, 6));
    c
}

fn clusters_of(t: &PhyloTree) -> BTreeSet<Cluster> {
    t.nodes().map(|v| t.cluster(v)).collect()
}

/// Agreement-forest test written straight from the definition with the
/// string-set API: the blocks partition the leaves, every component refines
/// both restrictions, and the embeddings are pairwise edge-disjoint.
pub fn naive_is_agreement_forest(f: &Forest, t1: &PhyloTree, t2: &PhyloTree) -> bool {
    let all = t1.leaf_set();
    let mut seen = HashSet::new();
    for c in f.components() {
        for l in c.leaf_labels() {
            if !all.contains(l) || !seen.insert(l.to_owned()) {
                return false;
            }
        }
    }
    if seen.len() != all.len() {
        return false;
    }
    for t in [t1, t2] {
        let mut used: HashSet<(NodeId, NodeId)> = HashSet::new();
        for c in f.components() {
            let block = c.leaf_set();
            let restricted = t.restrict(&block).unwrap();
            if !clusters_of(&restricted).is_subset(&clusters_of(c)) {
                return false;
            }
            for e in t.embed(&block).unwrap().edges {
                if !used.insert(e) {
                    return false;
                }
            }
        }
    }
    true
}
