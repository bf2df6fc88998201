//! Acyclic agreement forests.
//!
//! An agreement forest `A` is first made maximal and minimally refined. The
//! input trees are then labelled by the vertices and edges of `A`, which
//! yields a weighted digraph `D` whose feedback vertex sets correspond to
//! acyclic splittings of `A`. Removing a proper feedback vertex set `F`
//! from `A` gives an acyclic agreement forest with `|A| + w(F)` components.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use petgraph::algo::is_cyclic_directed;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::approx::approximate_maf;
use crate::dfvs::{
    is_fvs, is_proper, minimalize, properize, properness_violation, solve_dfvs_exact, solve_dfvs_greedy,
    FvsSolution, VertexClass, VertexTag, WeightedDigraph,
};
use crate::error::{Error, Result};
use crate::forest::{forest_from_sets, is_agreement_forest, Forest};
use crate::fpt::solve_maf_exact;
use crate::taxa::{lca_of_set, TaxonIndex};
use crate::tree::{Cluster, NodeId, PhyloTree};

/// Inheritance graph of a forest: one node per component, in forest order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InheritanceGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl InheritanceGraph {
    pub fn is_acyclic(&self) -> bool {
        let g: DiGraph<(), ()> = DiGraph::from_edges(
            self.edges.iter().map(|&(a, b)| (a as u32, b as u32)),
        );
        !is_cyclic_directed(&g)
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }
}

/// Both trees with taxon numbering and per-vertex cluster bitsets.
struct Frame<'a> {
    trees: [&'a PhyloTree; 2],
    index: TaxonIndex,
    clusters: [Vec<FixedBitSet>; 2],
}

impl<'a> Frame<'a> {
    fn new(t1: &'a PhyloTree, t2: &'a PhyloTree) -> Result<Self> {
        t1.same_leaf_set(t2)?;
        let index = TaxonIndex::from_tree(t1);
        let clusters = [index.node_clusters(t1), index.node_clusters(t2)];
        Ok(Frame {
            trees: [t1, t2],
            index,
            clusters,
        })
    }

    fn block(&self, c: &PhyloTree) -> FixedBitSet {
        self.index.set_of(c.leaf_labels())
    }

    /// Roots of the block embeddings in tree `i`, and the block owning the
    /// edge above each vertex, if any.
    fn embeddings(&self, blocks: &[FixedBitSet], i: usize) -> (Vec<NodeId>, Vec<Option<usize>>) {
        let t = self.trees[i];
        let cl = &self.clusters[i];
        let roots = blocks.iter().map(|b| lca_of_set(t, cl, b)).collect();
        let mut owner = vec![None; t.node_count()];
        for (j, b) in blocks.iter().enumerate() {
            let size = b.count_ones(..);
            for v in t.nodes() {
                let k = cl[v.index()].intersection(b).count();
                if k > 0 && k < size {
                    owner[v.index()] = Some(j);
                }
            }
        }
        (roots, owner)
    }

    fn check(&self, f: &Forest) -> Result<Vec<FixedBitSet>> {
        if let Some(v) = is_agreement_forest(f, self.trees[0], self.trees[1])?.violation() {
            return Err(Error::InvalidForest(v.to_string()));
        }
        Ok(f.components().iter().map(|c| self.block(c)).collect())
    }
}

/// Inheritance graph of an agreement forest: `(F, F')` whenever in some
/// tree the path from the root of `F` down to the root of `F'` starts with
/// an edge of `F`.
pub fn inheritance_graph(t1: &PhyloTree, t2: &PhyloTree, f: &Forest) -> Result<InheritanceGraph> {
    let frame = Frame::new(t1, t2)?;
    let blocks = frame.check(f)?;
    Ok(inheritance_of(&frame, &blocks))
}

fn inheritance_of(frame: &Frame, blocks: &[FixedBitSet]) -> InheritanceGraph {
    let mut edges = BTreeSet::new();
    for i in 0..2 {
        let t = frame.trees[i];
        let (roots, owner) = frame.embeddings(blocks, i);
        for (lower, &r) in roots.iter().enumerate() {
            let mut x = r;
            while let Some(a) = t.parent(x) {
                if let Some(upper) = owner[x.index()] {
                    if upper != lower && roots[upper] == a {
                        edges.insert((upper, lower));
                    }
                }
                x = a;
            }
        }
    }
    InheritanceGraph {
        nodes: blocks.len(),
        edges: edges.into_iter().collect(),
    }
}

/// Whether `f` is an agreement forest with an acyclic inheritance graph.
pub fn is_acyclic_agreement_forest(t1: &PhyloTree, t2: &PhyloTree, f: &Forest) -> Result<bool> {
    match inheritance_graph(t1, t2, f) {
        Ok(g) => Ok(g.is_acyclic()),
        Err(Error::InvalidForest(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Merges components while the result stays an agreement forest. Pairs are
/// tried in forest order and the scan restarts after every merge. The
/// returned forest is in canonical (minimally refined) form.
pub fn maximalize(t1: &PhyloTree, t2: &PhyloTree, a: &Forest) -> Result<Forest> {
    let frame = Frame::new(t1, t2)?;
    let mut blocks = frame.check(a)?;
    'merge: loop {
        blocks.sort_by(|x, y| x.ones().next().cmp(&y.ones().next()));
        let emb = [frame.embeddings(&blocks, 0), frame.embeddings(&blocks, 1)];
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                if !mergeable(&frame, &emb, &blocks, i, j) {
                    continue;
                }
                let other = blocks.remove(j);
                blocks[i].union_with(&other);
                continue 'merge;
            }
        }
        break;
    }
    forest_from_sets(&frame.index, &frame.clusters[0], &frame.clusters[1], &blocks)
        .ok_or_else(|| Error::InvalidForest("merged block became incompatible".into()))
}

type Embeddings = (Vec<NodeId>, Vec<Option<usize>>);

fn mergeable(frame: &Frame, emb: &[Embeddings; 2], blocks: &[FixedBitSet], i: usize, j: usize) -> bool {
    // The edges joining the two embeddings must be free. Components sharing
    // their root in both trees pass trivially.
    for k in 0..2 {
        let t = frame.trees[k];
        let (roots, owner) = &emb[k];
        let top = t.lca(roots[i], roots[j]);
        for start in [roots[i], roots[j]] {
            let mut x = start;
            while x != top {
                if owner[x.index()].is_some_and(|o| o != i && o != j) {
                    return false;
                }
                x = t.parent(x).expect("top is an ancestor");
            }
        }
    }
    let mut union = blocks[i].clone();
    union.union_with(&blocks[j]);
    frame
        .index
        .block_tree(&frame.clusters[0], &frame.clusters[1], &union)
        .is_some()
}

/// Replaces every component by the minimal common refinement of the two
/// restricted trees on its leaves.
pub fn minimally_refine(t1: &PhyloTree, t2: &PhyloTree, a: &Forest) -> Result<Forest> {
    let blocks: Vec<Cluster> = a.blocks();
    Forest::from_partition(t1, t2, &blocks)?
        .ok_or_else(|| Error::InvalidForest("a component has incompatible restrictions".into()))
}

/// How one input tree is labelled by a forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeLabels {
    /// `vertex_image[c][v]`: tree vertex labelled by vertex `v` of
    /// component `c`, the lowest common ancestor of its cluster.
    pub vertex_image: Vec<Vec<NodeId>>,
    /// `edge_path[c][v]`: tree edges, top-down and named by their heads,
    /// labelled by the component edge entering `v`. Empty for roots and for
    /// edges contracted in this tree.
    pub edge_path: Vec<Vec<Vec<NodeId>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledEmbedding {
    pub trees: [TreeLabels; 2],
}

/// Labels both trees by the vertices and edges of `a`. Fails if some edge
/// of `a` labels no tree edge at all, which means `a` is refined beyond
/// what the trees support.
pub fn label_trees(t1: &PhyloTree, t2: &PhyloTree, a: &Forest) -> Result<LabeledEmbedding> {
    let frame = Frame::new(t1, t2)?;
    frame.check(a)?;
    let labels = [0, 1].map(|i| {
        let t = frame.trees[i];
        let mut vertex_image = Vec::with_capacity(a.len());
        let mut edge_path = Vec::with_capacity(a.len());
        for c in a.components() {
            let own = frame.index.node_clusters(c);
            let images: Vec<NodeId> = own
                .iter()
                .map(|s| lca_of_set(t, &frame.clusters[i], s))
                .collect();
            let paths = c
                .nodes()
                .map(|v| match c.parent(v) {
                    None => Vec::new(),
                    Some(u) => {
                        let mut path = Vec::new();
                        let mut x = images[v.index()];
                        while x != images[u.index()] {
                            path.push(x);
                            x = t.parent(x).expect("image of a parent lies above");
                        }
                        path.reverse();
                        path
                    }
                })
                .collect();
            vertex_image.push(images);
            edge_path.push(paths);
        }
        TreeLabels {
            vertex_image,
            edge_path,
        }
    });
    for (ci, c) in a.components().iter().enumerate() {
        for v in c.nodes().skip(1) {
            if labels.iter().all(|l| l.edge_path[ci][v.index()].is_empty()) {
                return Err(Error::OverRefined(format!(
                    "edge above {{{}}} of component {ci} labels no tree edge",
                    c.leaves_below(v).join(",")
                )));
            }
        }
    }
    Ok(LabeledEmbedding { trees: labels })
}

/// Builds the weighted digraph `D`. Internal vertices of `a` get weight
/// outdegree minus one, edges get weight one. There is an arc from a vertex
/// to each edge leaving it, and from an edge `e` to a vertex `v` when, in a
/// tree where `e` labels a path, the image of `v` lies at or below the head
/// of the path's first edge. Each edge also gets the arcs of the edges below
/// it in its component.
pub fn build_dfvs_instance(t1: &PhyloTree, t2: &PhyloTree, a: &Forest, emb: &LabeledEmbedding) -> WeightedDigraph {
    let trees = [t1, t2];
    let mut weights = Vec::new();
    let mut tags = Vec::new();
    let mut vertex_id: Vec<Vec<usize>> = Vec::with_capacity(a.len());
    let mut edge_id: Vec<Vec<usize>> = Vec::with_capacity(a.len());
    for (ci, c) in a.components().iter().enumerate() {
        let mut vid = vec![usize::MAX; c.node_count()];
        let mut eid = vec![usize::MAX; c.node_count()];
        for v in c.nodes() {
            if !c.is_leaf(v) {
                vid[v.index()] = weights.len();
                weights.push(c.children(v).len() as u64 - 1);
                tags.push(VertexTag {
                    class: VertexClass::Vertex,
                    component: ci,
                    node: v,
                });
            }
            if c.parent(v).is_some() {
                eid[v.index()] = weights.len();
                weights.push(1);
                tags.push(VertexTag {
                    class: VertexClass::Edge,
                    component: ci,
                    node: v,
                });
            }
        }
        vertex_id.push(vid);
        edge_id.push(eid);
    }
    let mut g = WeightedDigraph::with_tags(weights, tags);
    for (ci, c) in a.components().iter().enumerate() {
        for v in c.nodes().skip(1) {
            let u = c.parent(v).expect("non-root");
            g.add_edge(vertex_id[ci][u.index()], edge_id[ci][v.index()]);
        }
    }
    for (i, t) in trees.iter().enumerate() {
        let sizes = t.subtree_sizes();
        let labels = &emb.trees[i];
        let below = |top: NodeId, x: NodeId| top.index() <= x.index() && x.index() < top.index() + sizes[top.index()];
        for (ce, c) in a.components().iter().enumerate() {
            for e in c.nodes().skip(1) {
                let Some(&top) = labels.edge_path[ce][e.index()].first() else {
                    continue;
                };
                for (cv, cc) in a.components().iter().enumerate() {
                    for v in cc.nodes().filter(|&v| !cc.is_leaf(v)) {
                        if below(top, labels.vertex_image[cv][v.index()]) {
                            g.add_edge(edge_id[ce][e.index()], vertex_id[cv][v.index()]);
                        }
                    }
                }
            }
        }
    }
    // An edge also reaches whatever the edges below it reach. This matters
    // when the edge is contracted in the tree that provides the reach: then
    // deleting the vertex below it must still leave a cycle through it.
    for (ci, c) in a.components().iter().enumerate() {
        for v in c.nodes().rev() {
            if c.is_leaf(v) || c.parent(v).is_none() {
                continue;
            }
            let above = edge_id[ci][v.index()];
            let inherited: Vec<usize> = c
                .children(v)
                .iter()
                .flat_map(|&k| g.successors(edge_id[ci][k.index()]).to_vec())
                .collect();
            for w in inherited {
                g.add_edge(above, w);
            }
        }
    }
    g
}

/// `A \ F` for any vertex set of `D`: deletes the chosen vertices and
/// edges of `a` and restricts every component to each remaining group of
/// connected leaves. No properness or feedback check is made.
pub fn split_forest(a: &Forest, d: &WeightedDigraph, f: &[usize]) -> Result<Forest> {
    let tags = d.tags().ok_or(Error::Untagged)?;
    let mut gone_vertex: Vec<Vec<bool>> = a.components().iter().map(|c| vec![false; c.node_count()]).collect();
    let mut gone_edge = gone_vertex.clone();
    for &x in f {
        let tag = tags[x];
        match tag.class {
            VertexClass::Vertex => gone_vertex[tag.component][tag.node.index()] = true,
            VertexClass::Edge => gone_edge[tag.component][tag.node.index()] = true,
        }
    }
    let mut parts = Vec::new();
    for (ci, c) in a.components().iter().enumerate() {
        let mut uf = UnionFind::<usize>::new(c.node_count());
        for v in c.nodes().skip(1) {
            let u = c.parent(v).expect("non-root");
            if !gone_edge[ci][v.index()] && !gone_vertex[ci][v.index()] && !gone_vertex[ci][u.index()] {
                uf.union(u.index(), v.index());
            }
        }
        let mut groups: Vec<(usize, Cluster)> = Vec::new();
        for leaf in c.leaves() {
            let root = uf.find(leaf.index());
            let label = c.label(leaf).expect("leaf");
            match groups.iter_mut().find(|(r, _)| *r == root) {
                Some((_, g)) => {
                    g.insert(label);
                }
                None => groups.push((root, Cluster::new([label]))),
            }
        }
        for (_, g) in groups {
            parts.push(c.restrict(&g)?);
        }
    }
    Forest::new(parts)
}

/// `A \ F` for a proper feedback vertex set `F` of `D`.
pub fn remove_fvs(a: &Forest, d: &WeightedDigraph, f: &FvsSolution) -> Result<Forest> {
    if let Some(why) = properness_violation(d, f)? {
        return Err(Error::NotProper(why));
    }
    split_forest(a, d, &f.vertices)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MafMode {
    Approx,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DfvsMode {
    Exact,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MaafDiagnostics {
    pub components: usize,
    pub k: usize,
    /// Components of the agreement forest from the first stage, minus one.
    pub maf_size: usize,
    /// Components after maximalization.
    pub maximal_components: usize,
    pub dfvs_vertices: usize,
    pub dfvs_weight: u64,
    pub proper: bool,
    pub acyclic: bool,
    pub identity_holds: bool,
    pub inheritance_graph: InheritanceGraph,
}

#[derive(Clone, Debug)]
pub struct MaafResult {
    pub forest: Forest,
    pub k: usize,
    pub diagnostics: MaafDiagnostics,
}

/// Acyclic agreement forest via agreement forest plus feedback vertex set.
/// `max_k` bounds the exact agreement-forest search and is ignored in
/// approximate mode.
pub fn approximate_maaf_with(
    t1: &PhyloTree,
    t2: &PhyloTree,
    maf_mode: MafMode,
    dfvs_mode: DfvsMode,
    max_k: Option<usize>,
) -> Result<MaafResult> {
    let a0 = match maf_mode {
        MafMode::Approx => approximate_maf(t1, t2)?.0,
        MafMode::Exact => {
            let cap = max_k.unwrap_or(t1.leaf_count());
            solve_maf_exact(t1, t2, cap)?
                .ok_or_else(|| Error::Precondition(format!("agreement forest needs more than {cap} cuts")))?
                .0
        }
    };
    let a = minimally_refine(t1, t2, &maximalize(t1, t2, &a0)?)?;
    let emb = label_trees(t1, t2, &a)?;
    let d = build_dfvs_instance(t1, t2, &a, &emb);
    let raw = match dfvs_mode {
        DfvsMode::Exact => solve_dfvs_exact(&d),
        DfvsMode::Greedy => solve_dfvs_greedy(&d),
    };
    let f = properize(&d, &minimalize(&d, &raw)?)?;
    let proper = is_proper(&d, &f)?;
    let out = remove_fvs(&a, &d, &f)?;
    let frame = Frame::new(t1, t2)?;
    let blocks = frame.check(&out)?;
    let ig = inheritance_of(&frame, &blocks);
    let acyclic = ig.is_acyclic() && is_fvs(&d, &f.vertices);
    if !acyclic {
        return Err(Error::InvalidForest("splitting is not acyclic".into()));
    }
    let identity_holds = out.len() as u64 == a.len() as u64 + f.weight;
    let k = out.len() - 1;
    Ok(MaafResult {
        k,
        diagnostics: MaafDiagnostics {
            components: out.len(),
            k,
            maf_size: a0.len() - 1,
            maximal_components: a.len(),
            dfvs_vertices: d.len(),
            dfvs_weight: f.weight,
            proper,
            acyclic,
            identity_holds,
            inheritance_graph: ig,
        },
        forest: out,
    })
}

/// [`approximate_maaf_with`] without a budget for the exact stage.
pub fn approximate_maaf(t1: &PhyloTree, t2: &PhyloTree, maf_mode: MafMode, dfvs_mode: DfvsMode) -> Result<MaafResult> {
    approximate_maaf_with(t1, t2, maf_mode, dfvs_mode, None)
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

    const T1: &str = "(((a,b),c),d);";
    const T2: &str = "(((c,d),a),b);";

    #[test]
    fn cyclic_forest_has_two_cycle() {
        let g = inheritance_graph(&t(T1), &t(T2), &f("(a,b); (c,d);")).unwrap();
        assert_eq!(g.edges, vec![(0, 1), (1, 0)]);
        assert!(!g.is_acyclic());
        assert!(!is_acyclic_agreement_forest(&t(T1), &t(T2), &f("(a,b); (c,d);")).unwrap());
    }

    #[test]
    fn splitting_one_side_breaks_the_cycle() {
        let forest = f("(a,b); c; d;");
        assert!(inheritance_graph(&t(T1), &t(T2), &forest).unwrap().is_acyclic());
        assert!(is_acyclic_agreement_forest(&t(T1), &t(T2), &forest).unwrap());
    }

    #[test]
    fn singletons_have_no_inheritance() {
        let g = inheritance_graph(&t(T1), &t(T2), &f("a; b; c; d;")).unwrap();
        assert!(g.edges.is_empty());
    }

    #[test]
    fn invalid_forest_is_rejected() {
        let bad = f("(a,c); (b,d);");
        assert!(matches!(
            inheritance_graph(&t("((a,b),(c,d));"), &t("((a,b),(c,d));"), &bad),
            Err(Error::InvalidForest(_))
        ));
        assert!(!is_acyclic_agreement_forest(&t("((a,b),(c,d));"), &t("((a,b),(c,d));"), &bad).unwrap());
    }

    #[test]
    fn maximalize_merges_compatible_pieces() {
        let tree = t("((a,b),(c,d));");
        let m = maximalize(&tree, &tree, &f("a; b; (c,d);")).unwrap();
        assert_eq!(m, Forest::single(tree.clone()));
        let m = maximalize(&t(T1), &t(T2), &f("(a,b); (c,d);")).unwrap();
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn pieces_with_identical_roots_merge() {
        let tree = t("((a,b),(c,d));");
        let m = maximalize(&tree, &tree, &f("(a,b); (c,d);")).unwrap();
        assert_eq!(m, Forest::single(tree));
    }

    #[test]
    fn minimally_refine_collapses_unsupported_edges() {
        let star = t("(a,b,c);");
        let m = minimally_refine(&star, &star, &f("((a,b),c);")).unwrap();
        assert_eq!(m, Forest::single(star));
    }

    #[test]
    fn over_refined_forest_is_reported() {
        let star = t("(a,b,c);");
        assert!(matches!(
            label_trees(&star, &star, &f("((a,b),c);")),
            Err(Error::OverRefined(_))
        ));
    }

    #[test]
    fn labels_of_identical_binary_tree() {
        let tree = t("((a,b),(c,d));");
        let a = Forest::single(tree.clone());
        let emb = label_trees(&tree, &tree, &a).unwrap();
        for labels in &emb.trees {
            for v in tree.nodes().skip(1) {
                assert_eq!(labels.edge_path[0][v.index()], vec![v]);
            }
        }
        let d = build_dfvs_instance(&tree, &tree, &a, &emb);
        assert!(crate::dfvs::is_acyclic(&d));
    }

    #[test]
    fn edge_spanning_suppressed_vertex() {
        // Component (a,(b,c)) embeds in t1 with the edge above (b,c)
        // covering two tree edges.
        let t1 = t("((a,x),((b,c),y));");
        let t2 = t("((a,(b,c)),x,y);");
        let a = f("(a,(b,c)); x; y;");
        let emb = label_trees(&t1, &t2, &a).unwrap();
        let comp = &a.components()[0];
        let bc = comp.children(comp.root())[1];
        assert_eq!(emb.trees[0].edge_path[0][bc.index()].len(), 2);
        assert_eq!(emb.trees[1].edge_path[0][bc.index()].len(), 1);
    }

    #[test]
    fn two_labels_on_one_multifurcation() {
        // (a,b) and the root of the component both land on the star's root.
        let (t1, t2) = (t("(a,b,c);"), t("((a,b),c);"));
        let a = f("((a,b),c);");
        let emb = label_trees(&t1, &t2, &a).unwrap();
        let comp = &a.components()[0];
        let ab = comp.children(comp.root())[0];
        let img = &emb.trees[0].vertex_image[0];
        assert_eq!(img[ab.index()], img[comp.root().index()]);
        assert_ne!(emb.trees[1].vertex_image[0][ab.index()], emb.trees[1].vertex_image[0][comp.root().index()]);
        assert!(emb.trees[0].edge_path[0][ab.index()].is_empty());
    }

    #[test]
    fn weights_follow_outdegree() {
        let tree = t("((a,b),(c,d,e,f,g));");
        let a = Forest::single(tree.clone());
        let emb = label_trees(&tree, &tree, &a).unwrap();
        let d = build_dfvs_instance(&tree, &tree, &a, &emb);
        let w: Vec<(VertexClass, u64)> = (0..d.len()).map(|v| (d.tag(v).unwrap().class, d.weight(v))).collect();
        assert!(w.contains(&(VertexClass::Vertex, 1)));
        assert!(w.contains(&(VertexClass::Vertex, 4)));
        assert!(w.iter().filter(|x| x.0 == VertexClass::Edge).all(|x| x.1 == 1));
    }

    #[test]
    fn cyclic_instance_pipeline() {
        let (t1, t2) = (t(T1), t(T2));
        let a = minimally_refine(&t1, &t2, &maximalize(&t1, &t2, &f("(a,b); (c,d);")).unwrap()).unwrap();
        let emb = label_trees(&t1, &t2, &a).unwrap();
        let d = build_dfvs_instance(&t1, &t2, &a, &emb);
        assert!(!crate::dfvs::is_acyclic(&d));
        let opt = solve_dfvs_exact(&d);
        assert_eq!(opt.weight, 1);
        let p = properize(&d, &opt).unwrap();
        assert_eq!(remove_fvs(&a, &d, &p).unwrap().len(), 3);

        for mode in [MafMode::Exact, MafMode::Approx] {
            let r = approximate_maaf(&t1, &t2, mode, DfvsMode::Exact).unwrap();
            assert!(r.diagnostics.acyclic && r.diagnostics.identity_holds && r.diagnostics.proper);
            assert!(r.k <= 8);
        }
        assert_eq!(approximate_maaf(&t1, &t2, MafMode::Exact, DfvsMode::Exact).unwrap().k, 2);
    }

    #[test]
    fn remove_fvs_examples() {
        let tree = t("(a,b,(c,d));");
        let a = Forest::single(tree.clone());
        let emb = label_trees(&tree, &tree, &a).unwrap();
        let d = build_dfvs_instance(&tree, &tree, &a, &emb);
        assert_eq!(split_forest(&a, &d, &[]).unwrap(), a);
        let root_vertex = (0..d.len())
            .find(|&v| d.tag(v).unwrap() == VertexTag { class: VertexClass::Vertex, component: 0, node: tree.root() })
            .unwrap();
        // Outdegree 3 at the root: weight 2, three components.
        assert_eq!(d.weight(root_vertex), 2);
        assert_eq!(split_forest(&a, &d, &[root_vertex]).unwrap().len(), 3);
        let cd = tree.children(tree.root())[2];
        let cd_edge = (0..d.len())
            .find(|&v| d.tag(v).unwrap() == VertexTag { class: VertexClass::Edge, component: 0, node: cd })
            .unwrap();
        assert_eq!(split_forest(&a, &d, &[cd_edge]).unwrap(), f("(a,b); (c,d);"));
        // The empty set is the only proper set here, so nothing else is accepted.
        assert!(matches!(
            remove_fvs(&a, &d, &FvsSolution::new(&d, vec![cd_edge])),
            Err(Error::NotProper(_))
        ));
    }

    #[test]
    fn identical_trees() {
        let tree = t("((a,b,c),(d,e));");
        for mm in [MafMode::Approx, MafMode::Exact] {
            for dm in [DfvsMode::Exact, DfvsMode::Greedy] {
                let r = approximate_maaf(&tree, &tree, mm, dm).unwrap();
                assert_eq!(r.k, 0);
                assert_eq!(r.forest, Forest::single(tree.clone()));
            }
        }
    }

    #[test]
    fn edges_inherit_arcs_from_below() {
        // The edge above (a,b) is contracted in the second tree, where only
        // the edge above a reaches (d,e). Without inheriting that arc,
        // deleting the vertex (a,b) alone would break every cycle while
        // costing two components for weight one.
        let (t1, t2) = (t("((((a,b),c),d),e);"), t("((a,d,e),b,c);"));
        let a = f("((a,b),c); (d,e);");
        let emb = label_trees(&t1, &t2, &a).unwrap();
        let d = build_dfvs_instance(&t1, &t2, &a, &emb);
        let find = |class, component, leaves: &[&str]| {
            (0..d.len())
                .find(|&v| {
                    let tag = d.tag(v).unwrap();
                    tag.class == class
                        && tag.component == component
                        && a.components()[component].leaves_below(tag.node) == leaves
                })
                .unwrap()
        };
        let ab_vertex = find(VertexClass::Vertex, 0, &["a", "b"]);
        let ab_edge = find(VertexClass::Edge, 0, &["a", "b"]);
        let de_root = find(VertexClass::Vertex, 1, &["d", "e"]);
        assert!(d.successors(ab_edge).contains(&de_root));
        assert!(!is_fvs(&d, &[ab_vertex]));
        let r = approximate_maaf(&t1, &t2, MafMode::Exact, DfvsMode::Exact).unwrap();
        assert!(r.diagnostics.identity_holds);
        assert_eq!(r.k, 2);
    }
}
