//! Dense taxon numbering and bitset clusters used by the validators and the
//! refinement machinery.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::tree::{NodeId, PhyloTree, Shape};

/// Maps leaf labels to `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub(crate) struct TaxonIndex {
    names: Vec<String>,
    ids: HashMap<String, usize>,
}

impl TaxonIndex {
    pub fn from_tree(t: &PhyloTree) -> Self {
        Self::from_labels(t.leaf_labels().into_iter().map(str::to_owned).collect())
    }

    pub fn from_labels(mut names: Vec<String>) -> Self {
        names.sort_unstable();
        names.dedup();
        let ids = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        TaxonIndex { names, ids }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn id(&self, label: &str) -> Option<usize> {
        self.ids.get(label).copied()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn set_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> FixedBitSet {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.ids[l]);
        }
        s
    }

    /// Cluster of every vertex of `t`, indexed by vertex id. All leaf labels
    /// of `t` must be known to the index.
    pub fn node_clusters(&self, t: &PhyloTree) -> Vec<FixedBitSet> {
        let mut sets = vec![self.empty_set(); t.node_count()];
        for v in t.nodes().rev() {
            if let Some(l) = t.label(v) {
                sets[v.index()].insert(self.ids[l]);
            }
            if let Some(p) = t.parent(v) {
                let (lo, hi) = sets.split_at_mut(v.index());
                lo[p.index()].union_with(&hi[0]);
            }
        }
        sets
    }

    /// Builds the tree whose cluster set is the given family, provided the
    /// family is laminar. Singletons and the union of all sets are added
    /// when missing; empty sets are ignored.
    pub fn laminar_tree(&self, sets: Vec<FixedBitSet>) -> Option<PhyloTree> {
        let mut universe = self.empty_set();
        for s in &sets {
            universe.union_with(s);
        }
        if universe.is_clear() {
            return None;
        }
        let mut family: Vec<FixedBitSet> = sets.into_iter().filter(|s| !s.is_clear()).collect();
        for x in universe.ones() {
            let mut single = self.empty_set();
            single.insert(x);
            family.push(single);
        }
        family.push(universe);
        family.sort_by(|a, b| {
            b.count_ones(..)
                .cmp(&a.count_ones(..))
                .then_with(|| a.ones().cmp(b.ones()))
        });
        family.dedup();

        // family[0] is the universe; every later set needs a unique parent.
        let mut parent = vec![usize::MAX; family.len()];
        for j in 1..family.len() {
            for i in (0..j).rev() {
                if family[j].is_subset(&family[i]) {
                    if parent[j] == usize::MAX {
                        parent[j] = i;
                    }
                } else if !family[j].is_disjoint(&family[i]) {
                    return None;
                }
            }
        }
        let mut children = vec![Vec::new(); family.len()];
        for j in 1..family.len() {
            children[parent[j]].push(j);
        }
        let shape = self.family_shape(&family, &children, 0);
        Some(PhyloTree::from_shape(shape).expect("laminar family yields a valid tree"))
    }

    fn family_shape(&self, family: &[FixedBitSet], children: &[Vec<usize>], i: usize) -> Shape {
        if children[i].is_empty() {
            let x = family[i].ones().next().expect("nonempty set");
            Shape::Leaf(self.names[x].clone())
        } else {
            Shape::Internal(
                children[i]
                    .iter()
                    .map(|&c| self.family_shape(family, children, c))
                    .collect(),
            )
        }
    }

    /// Canonical tree for a block of leaves: the minimal common refinement of
    /// both trees restricted to the block, or `None` if those restrictions
    /// are incompatible. `clusters1`/`clusters2` come from [`node_clusters`].
    pub fn block_tree(
        &self,
        clusters1: &[FixedBitSet],
        clusters2: &[FixedBitSet],
        block: &FixedBitSet,
    ) -> Option<PhyloTree> {
        let mut sets: Vec<FixedBitSet> = clusters1
            .iter()
            .chain(clusters2)
            .map(|c| {
                let mut s = c.clone();
                s.intersect_with(block);
                s
            })
            .filter(|s| !s.is_clear())
            .collect();
        sets.sort_by(|a, b| a.ones().cmp(b.ones()));
        sets.dedup();
        self.laminar_tree(sets)
    }
}

/// Deepest vertex whose cluster contains `set` (the LCA of the set).
pub(crate) fn lca_of_set(t: &PhyloTree, clusters: &[FixedBitSet], set: &FixedBitSet) -> NodeId {
    let mut v = t.root();
    'descend: loop {
        for &c in t.children(v) {
            if set.is_subset(&clusters[c.index()]) {
                v = c;
                continue 'descend;
            }
        }
        return v;
    }
}
