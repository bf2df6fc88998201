//! Rooted phylogenetic trees with possibly multifurcating internal vertices.
//!
//! A [`PhyloTree`] is stored as an arena in canonical preorder: the root is
//! vertex 0, every child has a larger id than its parent, and the children of
//! every vertex are sorted by the smallest leaf label below them. Two trees
//! are label-isomorphic exactly when they compare equal.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::taxa::TaxonIndex;

/// Index of a vertex inside one [`PhyloTree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub(crate) usize);

impl NodeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A nested, unnormalized tree description.
///
/// Used as the interchange form between the parser, the generators and the
/// arena representation. Unary vertices and childless internal vertices are
/// allowed here and removed by [`PhyloTree::from_shape`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Leaf(String),
    Internal(Vec<Shape>),
}

impl Shape {
    pub fn leaf(label: impl Into<String>) -> Self {
        Shape::Leaf(label.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    label: Option<String>,
}

/// A rooted phylogenetic X-tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloTree {
    nodes: Vec<Node>,
    leaf_index: HashMap<String, NodeId>,
}

/// A set of leaf labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cluster(BTreeSet<String>);

impl Cluster {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Cluster(labels.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &Cluster) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn insert(&mut self, label: impl Into<String>) -> bool {
        self.0.insert(label.into())
    }

    pub fn union(&self, other: &Cluster) -> Cluster {
        Cluster(self.0.union(&other.0).cloned().collect())
    }

    pub fn as_set(&self) -> &BTreeSet<String> {
        &self.0
    }
}

impl<S: Into<String>> FromIterator<S> for Cluster {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Cluster::new(iter)
    }
}

/// The minimal subtree of a tree spanning a leaf set, as an edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// Lowest common ancestor of the leaf set.
    pub root: NodeId,
    /// Edges as `(parent, child)` pairs, sorted by child.
    pub edges: Vec<(NodeId, NodeId)>,
}

impl PhyloTree {
    /// Builds a tree from a shape, suppressing unary vertices and dropping
    /// internal vertices without leaves below them.
    pub fn from_shape(shape: Shape) -> Result<Self> {
        let normalized = normalize(shape)?.ok_or(Error::EmptyTree)?.0;
        let mut tree = PhyloTree {
            nodes: Vec::new(),
            leaf_index: HashMap::new(),
        };
        tree.push_shape(&normalized, None)?;
        Ok(tree)
    }

    pub fn leaf(label: impl Into<String>) -> Self {
        let label = label.into();
        let mut leaf_index = HashMap::new();
        leaf_index.insert(label.clone(), NodeId(0));
        PhyloTree {
            nodes: vec![Node {
                parent: None,
                children: Vec::new(),
                label: Some(label),
            }],
            leaf_index,
        }
    }

    fn push_shape(&mut self, shape: &Shape, parent: Option<NodeId>) -> Result<NodeId> {
        let id = NodeId(self.nodes.len());
        match shape {
            Shape::Leaf(label) => {
                if self.leaf_index.insert(label.clone(), id).is_some() {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
                self.nodes.push(Node {
                    parent,
                    children: Vec::new(),
                    label: Some(label.clone()),
                });
            }
            Shape::Internal(children) => {
                self.nodes.push(Node {
                    parent,
                    children: Vec::with_capacity(children.len()),
                    label: None,
                });
                for child in children {
                    let c = self.push_shape(child, Some(id))?;
                    self.nodes[id.0].children.push(c);
                }
            }
        }
        Ok(id)
    }

    pub fn to_shape(&self) -> Shape {
        self.subtree_shape(self.root())
    }

    pub fn subtree_shape(&self, v: NodeId) -> Shape {
        match &self.nodes[v.0].label {
            Some(label) => Shape::Leaf(label.clone()),
            None => Shape::Internal(
                self.nodes[v.0]
                    .children
                    .iter()
                    .map(|&c| self.subtree_shape(c))
                    .collect(),
            ),
        }
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_index.len()
    }

    /// All vertices in preorder.
    pub fn nodes(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (0..self.nodes.len()).map(NodeId)
    }

    /// Leaves in preorder.
    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes().filter(move |&v| self.is_leaf(v))
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.0].parent
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.nodes[v.0].children
    }

    pub fn label(&self, v: NodeId) -> Option<&str> {
        self.nodes[v.0].label.as_deref()
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.nodes[v.0].label.is_some()
    }

    pub fn find_leaf(&self, label: &str) -> Option<NodeId> {
        self.leaf_index.get(label).copied()
    }

    /// Sorted leaf labels.
    pub fn leaf_labels(&self) -> Vec<&str> {
        let mut labels: Vec<&str> = self.leaf_index.keys().map(String::as_str).collect();
        labels.sort_unstable();
        labels
    }

    pub fn leaf_set(&self) -> Cluster {
        Cluster::new(self.leaf_index.keys().cloned())
    }

    pub fn depth(&self, mut v: NodeId) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent(v) {
            v = p;
            d += 1;
        }
        d
    }

    /// Is `a` an ancestor of `b` or equal to it?
    pub fn is_ancestor_or_self(&self, a: NodeId, b: NodeId) -> bool {
        let mut v = b;
        loop {
            if v == a {
                return true;
            }
            if v.0 < a.0 {
                return false;
            }
            match self.parent(v) {
                Some(p) => v = p,
                None => return false,
            }
        }
    }

    pub fn lca(&self, a: NodeId, b: NodeId) -> NodeId {
        let (mut a, mut b) = (a, b);
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        while da > db {
            a = self.nodes[a.0].parent.expect("depth mismatch");
            da -= 1;
        }
        while db > da {
            b = self.nodes[b.0].parent.expect("depth mismatch");
            db -= 1;
        }
        while a != b {
            a = self.nodes[a.0].parent.expect("disconnected vertices");
            b = self.nodes[b.0].parent.expect("disconnected vertices");
        }
        a
    }

    /// Number of vertices in the subtree rooted at each vertex.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1; self.nodes.len()];
        for v in self.nodes().rev() {
            if let Some(p) = self.parent(v) {
                sizes[p.0] += sizes[v.0];
            }
        }
        sizes
    }

    /// Labels of the leaves below `v`, in preorder.
    pub fn leaves_below(&self, v: NodeId) -> Vec<&str> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            match self.label(x) {
                Some(l) => out.push(l),
                None => stack.extend(self.children(x).iter().rev()),
            }
        }
        out
    }

    /// Cluster of `v`: the set of leaf labels below it.
    pub fn cluster(&self, v: NodeId) -> Cluster {
        Cluster::new(self.leaves_below(v).into_iter().map(str::to_owned))
    }

    /// Clusters of every vertex, including singletons and the full leaf set.
    pub fn clusters(&self) -> BTreeSet<Cluster> {
        self.nodes().map(|v| self.cluster(v)).collect()
    }

    fn check_subset(&self, s: &Cluster) -> Result<()> {
        if s.is_empty() {
            return Err(Error::EmptyCluster);
        }
        match s.iter().find(|l| self.find_leaf(l).is_none()) {
            Some(l) => Err(Error::UnknownLabel(l.to_owned())),
            None => Ok(()),
        }
    }

    /// Restriction `T|S`: the minimal subtree spanning `s` with unary
    /// vertices suppressed.
    pub fn restrict(&self, s: &Cluster) -> Result<PhyloTree> {
        self.check_subset(s)?;
        let shape = self
            .restricted_shape(self.root(), s)
            .expect("nonempty subset");
        PhyloTree::from_shape(shape)
    }

    fn restricted_shape(&self, v: NodeId, s: &Cluster) -> Option<Shape> {
        match self.label(v) {
            Some(l) => s.contains(l).then(|| Shape::Leaf(l.to_owned())),
            None => {
                let kept: Vec<Shape> = self
                    .children(v)
                    .iter()
                    .filter_map(|&c| self.restricted_shape(c, s))
                    .collect();
                match kept.len() {
                    0 => None,
                    _ => Some(Shape::Internal(kept)),
                }
            }
        }
    }

    /// Embedding `T(S)`: the edges of the minimal subtree spanning `s`.
    pub fn embed(&self, s: &Cluster) -> Result<Embedding> {
        self.check_subset(s)?;
        let mut count = vec![0usize; self.nodes.len()];
        for l in s.iter() {
            count[self.leaf_index[l].0] = 1;
        }
        for v in self.nodes().rev() {
            if let Some(p) = self.parent(v) {
                count[p.0] += count[v.0];
            }
        }
        let full = s.len();
        let root = self
            .nodes()
            .filter(|v| count[v.0] == full)
            .last()
            .expect("root holds every leaf");
        let edges = self
            .nodes()
            .filter(|v| count[v.0] > 0 && count[v.0] < full)
            .map(|v| (self.parent(v).expect("non-root"), v))
            .collect();
        Ok(Embedding { root, edges })
    }

    pub fn same_leaf_set(&self, other: &PhyloTree) -> Result<()> {
        if let Some(l) = self.leaf_labels().into_iter().find(|l| other.find_leaf(l).is_none()) {
            return Err(Error::LabelMismatch(format!("`{l}` only in the first tree")));
        }
        if let Some(l) = other.leaf_labels().into_iter().find(|l| self.find_leaf(l).is_none()) {
            return Err(Error::LabelMismatch(format!("`{l}` only in the second tree")));
        }
        Ok(())
    }

    /// Does `self` refine `coarse`, i.e. is every cluster of `coarse` also a
    /// cluster of `self`?
    pub fn is_refinement_of(&self, coarse: &PhyloTree) -> Result<bool> {
        self.same_leaf_set(coarse)?;
        let index = TaxonIndex::from_tree(self);
        let fine: HashSet<_> = index.node_clusters(self).into_iter().collect();
        Ok(index
            .node_clusters(coarse)
            .iter()
            .all(|c| fine.contains(c)))
    }
}

/// The minimal common refinement of two trees on the same leaf set, if their
/// cluster sets are compatible.
pub fn common_refinement(t1: &PhyloTree, t2: &PhyloTree) -> Result<Option<PhyloTree>> {
    t1.same_leaf_set(t2)?;
    let index = TaxonIndex::from_tree(t1);
    let mut sets = index.node_clusters(t1);
    sets.extend(index.node_clusters(t2));
    Ok(index.laminar_tree(sets))
}

/// Canonicalizes a shape; returns it with its smallest leaf label.
fn normalize(shape: Shape) -> Result<Option<(Shape, String)>> {
    match shape {
        Shape::Leaf(label) => {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            let key = label.clone();
            Ok(Some((Shape::Leaf(label), key)))
        }
        Shape::Internal(children) => {
            let mut kept = Vec::with_capacity(children.len());
            for child in children {
                if let Some(c) = normalize(child)? {
                    kept.push(c);
                }
            }
            match kept.len() {
                0 => Ok(None),
                1 => Ok(kept.pop()),
                _ => {
                    kept.sort_by(|a, b| a.1.cmp(&b.1));
                    let key = kept[0].1.clone();
                    Ok(Some((
                        Shape::Internal(kept.into_iter().map(|c| c.0).collect()),
                        key,
                    )))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::parse_newick;

    fn t(s: &str) -> PhyloTree {
        parse_newick(s).unwrap()
    }

    #[test]
    fn restrict_suppresses_pass_through_vertices() {
        let tree = t("((a,b),(c,d));");
        assert_eq!(tree.restrict(&Cluster::new(["a", "c"])).unwrap(), t("(a,c);"));
        assert_eq!(t("(a,b,c);").restrict(&Cluster::new(["a", "b"])).unwrap(), t("(a,b);"));
        assert_eq!(tree.restrict(&tree.leaf_set()).unwrap(), tree);
    }

    #[test]
    fn restrict_rejects_foreign_labels() {
        let tree = t("((a,b),c);");
        assert_eq!(
            tree.restrict(&Cluster::new(["a", "z"])),
            Err(Error::UnknownLabel("z".into()))
        );
        assert_eq!(tree.restrict(&Cluster::default()), Err(Error::EmptyCluster));
    }

    #[test]
    fn embed_spans_lca() {
        let tree = t("((a,b),c);");
        let e = tree.embed(&Cluster::new(["a", "b"])).unwrap();
        assert_eq!(e.root, tree.parent(tree.find_leaf("a").unwrap()).unwrap());
        assert_eq!(e.edges.len(), 2);

        let single = tree.embed(&Cluster::new(["a"])).unwrap();
        assert!(single.edges.is_empty());
        assert_eq!(single.root, tree.find_leaf("a").unwrap());
    }

    #[test]
    fn embed_of_distant_pair() {
        // (((a,b),c),d) with {c,d}: root->d, root->v1, v1->c
        let tree = t("(((a,b),c),d);");
        let e = tree.embed(&Cluster::new(["c", "d"])).unwrap();
        assert_eq!(e.root, tree.root());
        let c = tree.find_leaf("c").unwrap();
        let d = tree.find_leaf("d").unwrap();
        let v1 = tree.parent(c).unwrap();
        let mut expected = vec![(tree.root(), d), (tree.root(), v1), (v1, c)];
        expected.sort_by_key(|e| e.1);
        assert_eq!(e.edges, expected);
    }

    #[test]
    fn refinement_relation() {
        assert!(t("((a,b),c);").is_refinement_of(&t("(a,b,c);")).unwrap());
        assert!(!t("((a,b),c);").is_refinement_of(&t("((a,c),b);")).unwrap());
        let x = t("((a,b),(c,d,e));");
        assert!(x.is_refinement_of(&x).unwrap());
        assert!(matches!(
            t("(a,b);").is_refinement_of(&t("(a,c);")),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn common_refinement_examples() {
        assert_eq!(
            common_refinement(&t("(a,b,c);"), &t("((a,b),c);")).unwrap(),
            Some(t("((a,b),c);"))
        );
        assert_eq!(common_refinement(&t("((a,b),c);"), &t("((a,c),b);")).unwrap(), None);
        assert_eq!(
            common_refinement(&t("(a,b,c,d);"), &t("((a,b),(c,d));")).unwrap(),
            Some(t("((a,b),(c,d));"))
        );
    }

    #[test]
    fn canonical_child_order() {
        assert_eq!(t("(c,(b,a));"), t("((a,b),c);"));
        let tree = t("(d,(c,b),a);");
        let first = tree.children(tree.root())[0];
        assert_eq!(tree.label(first), Some("a"));
    }

    #[test]
    fn lca_and_depth() {
        let tree = t("(((a,b),c),d);");
        let a = tree.find_leaf("a").unwrap();
        let c = tree.find_leaf("c").unwrap();
        let d = tree.find_leaf("d").unwrap();
        assert_eq!(tree.depth(a), 3);
        assert_eq!(tree.lca(a, d), tree.root());
        assert_eq!(tree.lca(a, c), tree.parent(c).unwrap());
        assert!(tree.is_ancestor_or_self(tree.parent(c).unwrap(), a));
        assert!(!tree.is_ancestor_or_self(c, a));
    }
}
