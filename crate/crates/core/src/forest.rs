//! Forests, the cut operation and agreement-forest validation.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::newick::write_newick;
use crate::taxa::TaxonIndex;
use crate::tree::{Cluster, NodeId, PhyloTree, Shape};

/// A set of trees with pairwise disjoint leaf sets, kept sorted by the
/// smallest leaf label of each component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forest {
    components: Vec<PhyloTree>,
}

impl Forest {
    pub fn new(mut components: Vec<PhyloTree>) -> Result<Self> {
        let mut seen = HashSet::new();
        for c in &components {
            for l in c.leaf_labels() {
                if !seen.insert(l.to_owned()) {
                    return Err(Error::DuplicateLabel(l.to_owned()));
                }
            }
        }
        components.sort_by(|a, b| a.leaf_labels()[0].cmp(b.leaf_labels()[0]));
        Ok(Forest { components })
    }

    pub fn single(tree: PhyloTree) -> Self {
        Forest {
            components: vec![tree],
        }
    }

    pub fn components(&self) -> &[PhyloTree] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Leaf set of each component.
    pub fn blocks(&self) -> Vec<Cluster> {
        self.components.iter().map(PhyloTree::leaf_set).collect()
    }

    pub fn component_of(&self, label: &str) -> Option<usize> {
        self.components
            .iter()
            .position(|c| c.find_leaf(label).is_some())
    }

    /// Builds the canonical forest for a leaf partition: every block becomes
    /// the minimal common refinement of `t1|block` and `t2|block`. Returns
    /// `None` when some block has incompatible restrictions.
    pub fn from_partition(t1: &PhyloTree, t2: &PhyloTree, blocks: &[Cluster]) -> Result<Option<Forest>> {
        t1.same_leaf_set(t2)?;
        let index = TaxonIndex::from_tree(t1);
        let mut covered = index.empty_set();
        let mut sets = Vec::with_capacity(blocks.len());
        for b in blocks {
            if b.is_empty() {
                return Err(Error::EmptyCluster);
            }
            let mut s = index.empty_set();
            for l in b.iter() {
                let id = index.id(l).ok_or_else(|| Error::UnknownLabel(l.to_owned()))?;
                if covered.contains(id) {
                    return Err(Error::DuplicateLabel(l.to_owned()));
                }
                covered.insert(id);
                s.insert(id);
            }
            sets.push(s);
        }
        if let Some(missing) = (0..index.len()).find(|&i| !covered.contains(i)) {
            return Err(Error::LabelMismatch(format!(
                "`{}` is in no block",
                index.name(missing)
            )));
        }
        let c1 = index.node_clusters(t1);
        let c2 = index.node_clusters(t2);
        Ok(forest_from_sets(&index, &c1, &c2, &sets))
    }

    /// Detaches the subtrees below `subset` (children of `v` in component
    /// `component`) as one new component. A multi-child subset first gets a
    /// fresh parent of its own; unary vertices left behind are suppressed.
    pub fn cut(&self, component: usize, v: NodeId, subset: &[NodeId]) -> Result<Forest> {
        let tree = self
            .components
            .get(component)
            .ok_or_else(|| Error::InvalidCut(format!("no component {component}")))?;
        if v.index() >= tree.node_count() || tree.is_leaf(v) {
            return Err(Error::InvalidCut("vertex is not an internal vertex".into()));
        }
        let children = tree.children(v);
        let chosen: HashSet<NodeId> = subset.iter().copied().collect();
        if chosen.is_empty() {
            return Err(Error::InvalidCut("empty child subset".into()));
        }
        if chosen.len() != subset.len() || chosen.iter().any(|c| !children.contains(c)) {
            return Err(Error::InvalidCut("subset is not a set of children of the vertex".into()));
        }
        if chosen.len() == children.len() {
            return Err(Error::InvalidCut("subset contains every child of the vertex".into()));
        }
        let detached = if subset.len() == 1 {
            tree.subtree_shape(subset[0])
        } else {
            Shape::Internal(subset.iter().map(|&c| tree.subtree_shape(c)).collect())
        };
        let remaining = shape_without(tree, tree.root(), v, &chosen);
        let mut components = self.components.clone();
        components[component] = PhyloTree::from_shape(remaining)?;
        components.push(PhyloTree::from_shape(detached)?);
        Forest::new(components)
    }
}

fn shape_without(t: &PhyloTree, x: NodeId, v: NodeId, drop: &HashSet<NodeId>) -> Shape {
    match t.label(x) {
        Some(l) => Shape::Leaf(l.to_owned()),
        None => Shape::Internal(
            t.children(x)
                .iter()
                .filter(|c| x != v || !drop.contains(c))
                .map(|&c| shape_without(t, c, v, drop))
                .collect(),
        ),
    }
}

pub(crate) fn forest_from_sets(
    index: &TaxonIndex,
    c1: &[FixedBitSet],
    c2: &[FixedBitSet],
    blocks: &[FixedBitSet],
) -> Option<Forest> {
    let components = blocks
        .iter()
        .map(|b| index.block_tree(c1, c2, b))
        .collect::<Option<Vec<_>>>()?;
    Some(Forest::new(components).expect("blocks are disjoint"))
}

/// First violated agreement-forest condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A component leaf that the trees do not have.
    UnknownLabel(String),
    /// A tree leaf that no component contains.
    MissingLabel(String),
    /// Component is not a refinement of `tree|L(component)`; `cluster` is a
    /// cluster of the restriction that the component lacks.
    NotRefinement {
        component: usize,
        tree: usize,
        cluster: Cluster,
    },
    /// Two component embeddings share the tree edge above `below`.
    SharedEdge {
        tree: usize,
        first: usize,
        second: usize,
        below: Cluster,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |c: &Cluster| c.iter().collect::<Vec<_>>().join(",");
        match self {
            Violation::UnknownLabel(l) => write!(f, "leaf `{l}` does not occur in the trees"),
            Violation::MissingLabel(l) => write!(f, "leaf `{l}` is not covered by any component"),
            Violation::NotRefinement {
                component,
                tree,
                cluster,
            } => write!(
                f,
                "component {component} does not refine T{}|L(F): missing cluster {{{}}}",
                tree + 1,
                show(cluster)
            ),
            Violation::SharedEdge {
                tree,
                first,
                second,
                below,
            } => write!(
                f,
                "components {first} and {second} both use the edge of T{} above {{{}}}",
                tree + 1,
                show(below)
            ),
        }
    }
}

/// Outcome of a validation, with the first violation found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Valid => None,
            Verdict::Invalid(v) => Some(v),
        }
    }
}

/// Is `f` a forest for `t`: leaf partition, refinement of each restriction
/// and edge-disjoint embeddings?
pub fn is_forest_for(f: &Forest, t: &PhyloTree) -> Verdict {
    let index = TaxonIndex::from_tree(t);
    match partition_sets(f, &index) {
        Ok(sets) => check_tree(f, t, 0, &index, &sets),
        Err(v) => Verdict::Invalid(v),
    }
}

/// Is `f` an agreement forest of `t1` and `t2`?
pub fn is_agreement_forest(f: &Forest, t1: &PhyloTree, t2: &PhyloTree) -> Result<Verdict> {
    t1.same_leaf_set(t2)?;
    let index = TaxonIndex::from_tree(t1);
    let sets = match partition_sets(f, &index) {
        Ok(sets) => sets,
        Err(v) => return Ok(Verdict::Invalid(v)),
    };
    for (i, t) in [t1, t2].into_iter().enumerate() {
        let verdict = check_tree(f, t, i, &index, &sets);
        if !verdict.is_valid() {
            return Ok(verdict);
        }
    }
    Ok(Verdict::Valid)
}

fn partition_sets(f: &Forest, index: &TaxonIndex) -> std::result::Result<Vec<FixedBitSet>, Violation> {
    let mut covered = index.empty_set();
    let mut sets = Vec::with_capacity(f.len());
    for c in f.components() {
        let mut s = index.empty_set();
        for l in c.leaf_labels() {
            let id = index.id(l).ok_or_else(|| Violation::UnknownLabel(l.to_owned()))?;
            s.insert(id);
        }
        covered.union_with(&s);
        sets.push(s);
    }
    match (0..index.len()).find(|&i| !covered.contains(i)) {
        Some(i) => Err(Violation::MissingLabel(index.name(i).to_owned())),
        None => Ok(sets),
    }
}

fn to_cluster(index: &TaxonIndex, s: &FixedBitSet) -> Cluster {
    Cluster::new(s.ones().map(|i| index.name(i).to_owned()))
}

fn check_tree(f: &Forest, t: &PhyloTree, tree_no: usize, index: &TaxonIndex, sets: &[FixedBitSet]) -> Verdict {
    let clusters = index.node_clusters(t);
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for (j, (comp, set)) in f.components().iter().zip(sets).enumerate() {
        let own: HashSet<FixedBitSet> = index.node_clusters(comp).into_iter().collect();
        let size = set.count_ones(..);
        for v in t.nodes() {
            let mut s = clusters[v.index()].clone();
            s.intersect_with(set);
            let k = s.count_ones(..);
            if k == 0 {
                continue;
            }
            if !own.contains(&s) {
                return Verdict::Invalid(Violation::NotRefinement {
                    component: j,
                    tree: tree_no,
                    cluster: to_cluster(index, &s),
                });
            }
            if k < size {
                if let Some(&other) = owner.get(&v.index()) {
                    return Verdict::Invalid(Violation::SharedEdge {
                        tree: tree_no,
                        first: other,
                        second: j,
                        below: t.cluster(v),
                    });
                }
                owner.insert(v.index(), j);
            }
        }
    }
    Verdict::Valid
}

/// Renders a forest as a compact single line, for messages.
pub fn forest_summary(f: &Forest) -> String {
    f.components()
        .iter()
        .map(write_newick)
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::{parse_forest, parse_newick};

    fn t(s: &str) -> PhyloTree {
        parse_newick(s).unwrap()
    }

    fn f(s: &str) -> Forest {
        parse_forest(s).unwrap()
    }

    #[test]
    fn crossing_quartet() {
        let t1 = t("((a,b),(c,d));");
        let t2 = t("((a,c),(b,d));");
        assert!(is_agreement_forest(&f("(a,b); c; d;"), &t1, &t2).unwrap().is_valid());
        match is_agreement_forest(&f("(a,b); (c,d);"), &t1, &t2).unwrap() {
            Verdict::Invalid(Violation::SharedEdge { tree: 1, below, .. }) => {
                assert!(below == Cluster::new(["a", "c"]) || below == Cluster::new(["b", "d"]))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn whole_tree_is_agreement_forest_of_itself() {
        let t1 = t("((a,b),(c,d,e));");
        assert!(is_agreement_forest(&Forest::single(t1.clone()), &t1, &t1)
            .unwrap()
            .is_valid());
    }

    #[test]
    fn partition_failures() {
        let t1 = t("((a,b),c);");
        assert_eq!(
            is_agreement_forest(&f("(a,b);"), &t1, &t1).unwrap(),
            Verdict::Invalid(Violation::MissingLabel("c".into()))
        );
        assert_eq!(
            is_agreement_forest(&f("(a,b); c; z;"), &t1, &t1).unwrap(),
            Verdict::Invalid(Violation::UnknownLabel("z".into()))
        );
        assert!(matches!(
            is_agreement_forest(&f("(a,b);"), &t1, &t("(a,b);")),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn refinement_failure_is_reported() {
        let t1 = t("((a,b),c);");
        let t2 = t("((a,c),b);");
        assert!(matches!(
            is_agreement_forest(&f("((a,b),c);"), &t1, &t2).unwrap(),
            Verdict::Invalid(Violation::NotRefinement { tree: 1, .. })
        ));
    }

    #[test]
    fn forest_rejects_overlapping_components() {
        assert_eq!(
            Forest::new(vec![t("(a,b);"), t("(b,c);")]),
            Err(Error::DuplicateLabel("b".into()))
        );
    }

    #[test]
    fn cut_single_child() {
        let forest = f("(a,b,c);");
        let tree = &forest.components()[0];
        let a = tree.find_leaf("a").unwrap();
        let out = forest.cut(0, tree.root(), &[a]).unwrap();
        assert_eq!(out, f("a; (b,c);"));
    }

    #[test]
    fn cut_refines_before_removing() {
        let forest = f("(a,b,c);");
        let tree = &forest.components()[0];
        let (a, b) = (tree.find_leaf("a").unwrap(), tree.find_leaf("b").unwrap());
        let out = forest.cut(0, tree.root(), &[a, b]).unwrap();
        assert_eq!(out, f("(a,b); c;"));
    }

    #[test]
    fn cut_suppresses_unary_root() {
        let forest = f("((a,b),c);");
        let tree = &forest.components()[0];
        let c = tree.find_leaf("c").unwrap();
        assert_eq!(forest.cut(0, tree.root(), &[c]).unwrap(), f("(a,b); c;"));
    }

    #[test]
    fn cut_errors() {
        let forest = f("(a,b,c);");
        let tree = &forest.components()[0];
        let kids: Vec<NodeId> = tree.children(tree.root()).to_vec();
        assert!(forest.cut(0, tree.root(), &kids).is_err());
        assert!(forest.cut(0, tree.root(), &[]).is_err());
        assert!(forest.cut(0, kids[0], &[kids[1]]).is_err());
        assert!(forest.cut(3, tree.root(), &[kids[0]]).is_err());
    }

    #[test]
    fn from_partition_builds_minimal_components() {
        let t1 = t("((a,b),(c,d));");
        let t2 = t("((a,c),(b,d));");
        let blocks = vec![Cluster::new(["a", "b"]), Cluster::new(["c"]), Cluster::new(["d"])];
        assert_eq!(
            Forest::from_partition(&t1, &t2, &blocks).unwrap(),
            Some(f("(a,b); c; d;"))
        );
        let t3 = t("((a,b),c,d);");
        let blocks = vec![Cluster::new(["a", "b", "c"]), Cluster::new(["d"])];
        assert_eq!(
            Forest::from_partition(&t3, &t("(a,(b,c),d);"), &blocks).unwrap(),
            None
        );
    }
}
