//! Exhaustive reference solvers for small instances.

use crate::dfvs::{is_fvs, FvsSolution, WeightedDigraph};
use crate::error::{Error, Result};
use crate::forest::{is_agreement_forest, Forest};
use crate::maaf::is_acyclic_agreement_forest;
use crate::tree::{Cluster, PhyloTree};

/// Largest leaf count the partition oracles accept.
pub const MAX_ORACLE_LEAVES: usize = 8;
/// Largest vertex count the subset oracle accepts.
pub const MAX_ORACLE_VERTICES: usize = 12;

/// Iterates over all set partitions of `0..n` as restricted growth strings:
/// `s[0] = 0` and `s[i] <= 1 + max(s[..i])`.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    s: Vec<usize>,
    max: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions {
            s: vec![0; n],
            max: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.s.clone();
        // Advance: bump the last position that can grow, reset the tail.
        let n = self.s.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let bound = self.max[i - 1] + 1;
            if self.s[i] < bound {
                self.s[i] += 1;
                self.max[i] = self.max[i - 1].max(self.s[i]);
                for j in i + 1..n {
                    self.s[j] = 0;
                    self.max[j] = self.max[j - 1];
                }
                break;
            }
        }
        Some(out)
    }
}

fn blocks_of(labels: &[&str], rgs: &[usize]) -> Vec<Cluster> {
    let k = rgs.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Cluster::default(); k];
    for (l, &b) in labels.iter().zip(rgs) {
        blocks[b].insert(*l);
    }
    blocks
}

fn search(t1: &PhyloTree, t2: &PhyloTree, acyclic: bool) -> Result<(usize, Forest)> {
    t1.same_leaf_set(t2)?;
    let labels = t1.leaf_labels();
    if labels.len() > MAX_ORACLE_LEAVES {
        return Err(Error::GuardExceeded {
            size: labels.len(),
            limit: MAX_ORACLE_LEAVES,
        });
    }
    let mut best: Option<Forest> = None;
    for rgs in SetPartitions::new(labels.len()) {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        if best.as_ref().is_some_and(|b| b.len() <= k) {
            continue;
        }
        let Some(f) = Forest::from_partition(t1, t2, &blocks_of(&labels, &rgs))? else {
            continue;
        };
        if !is_agreement_forest(&f, t1, t2)?.is_valid() {
            continue;
        }
        if acyclic && !is_acyclic_agreement_forest(t1, t2, &f)? {
            continue;
        }
        best = Some(f);
    }
    let f = best.expect("the all-singleton partition is always feasible");
    Ok((f.len() - 1, f))
}

/// Maximum agreement forest by trying every leaf partition.
pub fn brute_maf(t1: &PhyloTree, t2: &PhyloTree) -> Result<(usize, Forest)> {
    search(t1, t2, false)
}

/// Maximum acyclic agreement forest by trying every leaf partition.
pub fn brute_maaf(t1: &PhyloTree, t2: &PhyloTree) -> Result<(usize, Forest)> {
    search(t1, t2, true)
}

/// Minimum-weight feedback vertex set by trying every vertex subset. Ties
/// go to the subset whose bitmask is smallest.
pub fn brute_dfvs(g: &WeightedDigraph) -> Result<FvsSolution> {
    let n = g.len();
    if n > MAX_ORACLE_VERTICES {
        return Err(Error::GuardExceeded {
            size: n,
            limit: MAX_ORACLE_VERTICES,
        });
    }
    let mut best: Option<FvsSolution> = None;
    for mask in 0u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let w = g.weight_of(&set);
        if best.as_ref().is_some_and(|b| b.weight <= w) {
            continue;
        }
        if is_fvs(g, &set) {
            best = Some(FvsSolution::new(g, set));
        }
    }
    Ok(best.expect("the full vertex set is a feedback vertex set"))
}
