//! Polynomial-time 4-approximation for the maximum agreement forest of two
//! multifurcating trees.
//!
//! The algorithm works on a copy of `T1` and on a forest `F2` that starts as
//! a copy of `T2`. Each iteration looks at an internal vertex `u` of `T1`
//! whose children `C` are all leaves and either shrinks both structures
//! (cases 0a and 0b) or cuts edges of `F2` (cases 0c, 1 and 2). It stops when
//! `T1` has at most one leaf. Collapsed leaves get fresh synthetic taxa and
//! are expanded again at the end by replaying a log.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::forest::{is_agreement_forest, Forest};
use crate::tree::{Cluster, PhyloTree, Shape};
use crate::work::WorkForest;

/// A leaf of the working structures: an input label or a collapsed pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Taxon(pub(crate) u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogRecord {
    /// `pair` was merged into the fresh leaf `synthetic`.
    Collapse {
        synthetic: Taxon,
        pair: (Taxon, Taxon),
        /// Whether the pair had further siblings in `F2`.
        had_siblings: bool,
    },
    /// The leaf left both structures as a component of its own.
    RemoveSingleton(Taxon),
}

/// Which pair case applies to a pair of leaves from `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairCase {
    /// Neither leaf is a child of the pair's lowest common ancestor.
    One,
    /// The first leaf is a child of the lowest common ancestor.
    Two,
}

/// The next action the algorithm would take.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Finished,
    Collapse(Taxon, Taxon),
    RemoveIsolated(Taxon),
    SeparateAll(Vec<Taxon>),
    Pair(Taxon, Taxon, PairCase),
}

#[derive(Clone, Debug)]
pub struct ApproxState {
    names: std::sync::Arc<Vec<String>>,
    t1: WorkForest,
    f2: WorkForest,
    log: Vec<LogRecord>,
    cuts: usize,
    next_taxon: u32,
}

impl ApproxState {
    pub fn new(t1: &PhyloTree, t2: &PhyloTree) -> Result<Self> {
        t1.same_leaf_set(t2)?;
        let names: Vec<String> = t1.leaf_labels().into_iter().map(str::to_owned).collect();
        let n = names.len();
        let id = |l: &str| names.binary_search_by(|x| x.as_str().cmp(l)).expect("known label") as u32;
        let w1 = WorkForest::from_tree(t1, id, 2 * n);
        let w2 = WorkForest::from_tree(t2, id, 2 * n);
        Ok(ApproxState {
            names: std::sync::Arc::new(names),
            t1: w1,
            f2: w2,
            log: Vec::new(),
            cuts: 0,
            next_taxon: n as u32,
        })
    }

    pub fn taxon(&self, label: &str) -> Option<Taxon> {
        let i = self.names.binary_search_by(|x| x.as_str().cmp(label)).ok()?;
        self.t1.leaf_node(i as u32).map(|_| Taxon(i as u32))
    }

    /// Label of an input taxon; `None` for synthetic ones.
    pub fn label(&self, t: Taxon) -> Option<&str> {
        self.names.get(t.0 as usize).map(String::as_str)
    }

    pub fn cut_count(&self) -> usize {
        self.cuts
    }

    pub fn log(&self) -> &[LogRecord] {
        &self.log
    }

    pub fn t1_leaf_count(&self) -> usize {
        self.t1.leaf_count()
    }

    pub fn t1_node_count(&self) -> usize {
        self.t1.node_count()
    }

    pub fn f2_components(&self) -> usize {
        self.f2.components()
    }

    pub fn is_finished(&self) -> bool {
        self.t1.leaf_count() <= 1
    }

    /// Children of the chosen vertex `u` of `T1`, sorted. `u` is the vertex
    /// with only leaf children whose smallest child is least.
    pub fn select_u(&self) -> Result<Vec<Taxon>> {
        if self.is_finished() {
            return Err(Error::Precondition("T1 has fewer than two leaves".into()));
        }
        let (_, taxa) = self
            .t1
            .leaf_parents()
            .min_by_key(|(_, taxa)| taxa[0])
            .expect("a tree with two leaves has a vertex with only leaf children");
        Ok(taxa.into_iter().map(Taxon).collect())
    }

    pub fn next_step(&self) -> Step {
        if self.is_finished() {
            return Step::Finished;
        }
        let c = self.select_u().expect("not finished");
        let parents: Vec<Option<u32>> = c.iter().map(|t| self.f2_parent(*t)).collect();
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if parents[i].is_some() && parents[i] == parents[j] {
                    return Step::Collapse(c[i], c[j]);
                }
            }
        }
        if let Some(i) = parents.iter().position(Option::is_none) {
            return Step::RemoveIsolated(c[i]);
        }
        match self.best_pair(&c) {
            Some((a, b, case)) => Step::Pair(a, b, case),
            None => Step::SeparateAll(c),
        }
    }

    /// Best pair of leaves of `C` that share a component of `F2`.
    pub fn select_pair(&self) -> Result<(Taxon, Taxon, PairCase)> {
        match self.next_step() {
            Step::Pair(a, b, case) => Ok((a, b, case)),
            other => Err(Error::Precondition(format!(
                "no pair case applies, next step is {other:?}"
            ))),
        }
    }

    fn f2_node(&self, t: Taxon) -> u32 {
        self.f2.leaf_node(t.0).expect("taxon present in F2")
    }

    fn f2_parent(&self, t: Taxon) -> Option<u32> {
        self.f2.parent(self.f2_node(t))
    }

    fn best_pair(&self, c: &[Taxon]) -> Option<(Taxon, Taxon, PairCase)> {
        let nodes: Vec<u32> = c.iter().map(|&t| self.f2_node(t)).collect();
        let roots: Vec<u32> = nodes.iter().map(|&x| self.f2.root_of(x)).collect();
        let mut best = None;
        for i in 0..c.len() {
            for j in i + 1..c.len() {
                if roots[i] != roots[j] {
                    continue;
                }
                let w = self.f2.lca(nodes[i], nodes[j]);
                let i_child = self.f2.parent(nodes[i]) == Some(w);
                let j_child = self.f2.parent(nodes[j]) == Some(w);
                let neither = !i_child && !j_child;
                let key = (Reverse(self.f2.depth(w)), !neither, c[i], c[j]);
                let pair = match (i_child, j_child) {
                    (false, false) => (c[i], c[j], PairCase::One),
                    (true, _) => (c[i], c[j], PairCase::Two),
                    (false, true) => (c[j], c[i], PairCase::Two),
                };
                if best.as_ref().map_or(true, |(k, _)| key < *k) {
                    best = Some((key, pair));
                }
            }
        }
        best.map(|(_, pair)| pair)
    }

    fn check_present(&self, ts: &[Taxon]) -> Result<()> {
        for &t in ts {
            if self.t1.leaf_node(t.0).is_none() {
                return Err(Error::Precondition(format!("taxon {} is not a leaf", t.0)));
            }
        }
        Ok(())
    }

    fn fresh_taxon(&mut self) -> Taxon {
        let t = Taxon(self.next_taxon);
        self.next_taxon += 1;
        t
    }

    /// Case 0a: `c1` and `c2` are siblings in `T1` and in `F2`; both
    /// structures replace them by one new leaf.
    pub fn apply_case0a(&mut self, c1: Taxon, c2: Taxon) -> Result<Taxon> {
        self.check_present(&[c1, c2])?;
        let (x1, x2) = (self.t1.leaf_node(c1.0).unwrap(), self.t1.leaf_node(c2.0).unwrap());
        if c1 == c2 || self.t1.parent(x1).is_none() || self.t1.parent(x1) != self.t1.parent(x2) {
            return Err(Error::Precondition("leaves are not siblings in T1".into()));
        }
        if self.f2_parent(c1).is_none() || self.f2_parent(c1) != self.f2_parent(c2) {
            return Err(Error::Precondition("leaves do not share a parent in F2".into()));
        }
        let s = self.fresh_taxon();
        self.t1.collapse(c1.0, c2.0, s.0);
        let had_siblings = self.f2.collapse(c1.0, c2.0, s.0);
        self.log.push(LogRecord::Collapse {
            synthetic: s,
            pair: (c1, c2),
            had_siblings,
        });
        Ok(s)
    }

    /// Case 0b: `c` is an isolated vertex of `F2` and is dropped from both.
    pub fn apply_case0b(&mut self, c: Taxon) -> Result<()> {
        self.check_present(&[c])?;
        if self.f2_parent(c).is_some() {
            return Err(Error::Precondition("leaf is not isolated in F2".into()));
        }
        self.remove(c);
        Ok(())
    }

    fn remove(&mut self, c: Taxon) {
        self.t1.remove_leaf(c.0);
        self.f2.remove_leaf(c.0);
        self.log.push(LogRecord::RemoveSingleton(c));
    }

    /// Cuts `c` off its component and removes it. Charges one cut.
    pub(crate) fn separate(&mut self, c: Taxon) {
        let x = self.f2_node(c);
        debug_assert!(self.f2.parent(x).is_some());
        self.f2.detach(x);
        self.cuts += 1;
        self.remove(c);
    }

    /// Case 0c: the leaves of `C` all lie in different non-singleton
    /// components of `F2`; each becomes a singleton.
    pub fn apply_case0c(&mut self) -> Result<usize> {
        let c = self.select_u()?;
        let mut roots = Vec::with_capacity(c.len());
        for &t in &c {
            let x = self.f2_node(t);
            if self.f2.parent(x).is_none() {
                return Err(Error::Precondition("a leaf of C is isolated in F2".into()));
            }
            roots.push(self.f2.root_of(x));
        }
        roots.sort_unstable();
        if roots.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("two leaves of C share a component of F2".into()));
        }
        for &t in &c {
            self.separate(t);
        }
        Ok(c.len())
    }

    /// Detaches the given leaves of `F2` as a group; charges a cut unless
    /// the group already is a whole component.
    pub(crate) fn cut_taxa(&mut self, taxa: &[Taxon]) -> bool {
        if taxa.is_empty() {
            return false;
        }
        let raw: Vec<u32> = taxa.iter().map(|t| t.0).collect();
        let cut = self.f2.detach_taxa(&raw);
        self.cuts += usize::from(cut);
        cut
    }

    /// Leaves of `F2` below the parent of `c`, other than `c`.
    pub(crate) fn sibling_taxa(&self, c: Taxon) -> Vec<Taxon> {
        let p = self.f2_parent(c).expect("leaf has a parent");
        self.f2
            .taxa_below(p)
            .into_iter()
            .filter(|&t| t != c.0)
            .map(Taxon)
            .collect()
    }

    fn pair_geometry(&self, c1: Taxon, c2: Taxon) -> Result<(u32, bool, bool)> {
        self.check_present(&[c1, c2])?;
        let (x1, x2) = (self.f2_node(c1), self.f2_node(c2));
        if c1 == c2 || self.f2.root_of(x1) != self.f2.root_of(x2) {
            return Err(Error::Precondition("leaves are not in one component of F2".into()));
        }
        let w = self.f2.lca(x1, x2);
        Ok((w, self.f2.parent(x1) == Some(w), self.f2.parent(x2) == Some(w)))
    }

    /// Case 1: separates `c1`, its siblings `S1`, `c2` and its siblings
    /// `S2`. Returns the number of cuts made.
    pub fn apply_case1(&mut self, c1: Taxon, c2: Taxon) -> Result<usize> {
        let (_, child1, child2) = self.pair_geometry(c1, c2)?;
        if child1 || child2 {
            return Err(Error::Precondition("a leaf is a child of the lowest common ancestor".into()));
        }
        let s1 = self.sibling_taxa(c1);
        let s2 = self.sibling_taxa(c2);
        let before = self.cuts;
        self.cut_taxa(&[c1]);
        self.cut_taxa(&s1);
        self.cut_taxa(&[c2]);
        self.cut_taxa(&s2);
        Ok(self.cuts - before)
    }

    /// Case 2: `c1` is a child of the lowest common ancestor `p1` and `c2`
    /// is not. Separates `c1`, `c2`, the siblings `S2` of `c2` and what is
    /// left below `p1`. Returns the number of cuts made.
    pub fn apply_case2(&mut self, c1: Taxon, c2: Taxon) -> Result<usize> {
        let (w, child1, child2) = self.pair_geometry(c1, c2)?;
        if !child1 || child2 {
            return Err(Error::Precondition(
                "the first leaf must be the only child of the lowest common ancestor".into(),
            ));
        }
        let s2 = self.sibling_taxa(c2);
        let mut rest: Vec<Taxon> = self.f2.taxa_below(w).into_iter().map(Taxon).collect();
        rest.retain(|t| *t != c1 && *t != c2 && !s2.contains(t));
        let before = self.cuts;
        self.cut_taxa(&[c1]);
        self.cut_taxa(&[c2]);
        self.cut_taxa(&s2);
        self.cut_taxa(&rest);
        Ok(self.cuts - before)
    }

    /// Performs one iteration. Returns `false` once finished.
    pub fn step(&mut self) -> Result<bool> {
        match self.next_step() {
            Step::Finished => return Ok(false),
            Step::Collapse(a, b) => {
                self.apply_case0a(a, b)?;
            }
            Step::RemoveIsolated(c) => self.apply_case0b(c)?,
            Step::SeparateAll(_) => {
                self.apply_case0c()?;
            }
            Step::Pair(a, b, PairCase::One) => {
                self.apply_case1(a, b)?;
            }
            Step::Pair(a, b, PairCase::Two) => {
                self.apply_case2(a, b)?;
            }
        }
        Ok(true)
    }

    /// Replays the log backwards on top of `F2`, yielding a forest on the
    /// input labels. Components keep the topology `F2` ended with.
    pub fn expand(&self) -> Result<Forest> {
        // Arena of (taxon, children); taxon is NIL-like for internal vertices.
        let mut nodes: Vec<(Option<u32>, Vec<usize>)> = Vec::new();
        let mut at: Vec<usize> = vec![usize::MAX; self.next_taxon as usize];
        let mut roots = Vec::new();
        for r in self.f2.roots() {
            roots.push(copy_work(&self.f2, r, &mut nodes, &mut at));
        }
        for rec in self.log.iter().rev() {
            match *rec {
                LogRecord::RemoveSingleton(t) => {
                    at[t.0 as usize] = nodes.len();
                    roots.push(nodes.len());
                    nodes.push((Some(t.0), Vec::new()));
                }
                LogRecord::Collapse {
                    synthetic, pair: (a, b), ..
                } => {
                    let x = at[synthetic.0 as usize];
                    if x == usize::MAX {
                        return Err(Error::InvalidForest(format!(
                            "collapsed taxon {} missing during replay",
                            synthetic.0
                        )));
                    }
                    let (ya, yb) = (nodes.len(), nodes.len() + 1);
                    nodes.push((Some(a.0), Vec::new()));
                    nodes.push((Some(b.0), Vec::new()));
                    at[a.0 as usize] = ya;
                    at[b.0 as usize] = yb;
                    nodes[x] = (None, vec![ya, yb]);
                }
            }
        }
        let components = roots
            .into_iter()
            .map(|r| PhyloTree::from_shape(self.arena_shape(&nodes, r)?))
            .collect::<Result<Vec<_>>>()?;
        Forest::new(components)
    }

    fn arena_shape(&self, nodes: &[(Option<u32>, Vec<usize>)], x: usize) -> Result<Shape> {
        match &nodes[x] {
            (Some(t), _) => self
                .label(Taxon(*t))
                .map(Shape::leaf)
                .ok_or_else(|| Error::InvalidForest(format!("unexpanded taxon {t}"))),
            (None, kids) => Ok(Shape::Internal(
                kids.iter()
                    .map(|&k| self.arena_shape(nodes, k))
                    .collect::<Result<_>>()?,
            )),
        }
    }
}

fn copy_work(
    f: &WorkForest,
    x: u32,
    nodes: &mut Vec<(Option<u32>, Vec<usize>)>,
    at: &mut [usize],
) -> usize {
    let me = nodes.len();
    nodes.push((f.label(x), Vec::new()));
    match f.label(x) {
        Some(t) => at[t as usize] = me,
        None => {
            let kids: Vec<usize> = f.children(x).map(|c| copy_work(f, c, nodes, at)).collect();
            nodes[me].1 = kids;
        }
    }
    me
}

/// Turns a finished state into the canonical agreement forest for its leaf
/// partition and checks it.
pub(crate) fn finish(state: &ApproxState, t1: &PhyloTree, t2: &PhyloTree) -> Result<Forest> {
    let raw = state.expand()?;
    let blocks: Vec<Cluster> = raw.blocks();
    let forest = Forest::from_partition(t1, t2, &blocks)?
        .ok_or_else(|| Error::InvalidForest("a component has incompatible restrictions".into()))?;
    if let Some(v) = is_agreement_forest(&forest, t1, t2)?.violation() {
        return Err(Error::InvalidForest(v.to_string()));
    }
    Ok(forest)
}

/// Runs the approximation. Returns the agreement forest and the number of
/// cuts made, which is one less than the number of components.
pub fn approximate_maf(t1: &PhyloTree, t2: &PhyloTree) -> Result<(Forest, usize)> {
    let mut state = ApproxState::new(t1, t2)?;
    while state.step()? {}
    let forest = finish(&state, t1, t2)?;
    debug_assert_eq!(forest.len(), state.cut_count() + 1);
    Ok((forest, state.cut_count()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::newick::parse_newick;

    fn t(s: &str) -> PhyloTree {
        parse_newick(s).unwrap()
    }

    fn state(a: &str, b: &str) -> ApproxState {
        ApproxState::new(&t(a), &t(b)).unwrap()
    }

    fn tx(s: &ApproxState, l: &str) -> Taxon {
        s.taxon(l).unwrap()
    }

    #[test]
    fn identical_trees_need_no_cut() {
        for s in ["((a,b),c);", "(a,b,c,d);", "(((a,b),(c,d)),(e,f,g));"] {
            let (f, cuts) = approximate_maf(&t(s), &t(s)).unwrap();
            assert_eq!(cuts, 0);
            assert_eq!(f.components(), &[t(s)]);
        }
    }

    #[test]
    fn star_is_compatible_with_anything() {
        let (f, cuts) = approximate_maf(&t("(a,b,c,d);"), &t("((a,b),(c,d));")).unwrap();
        assert_eq!(cuts, 0);
        assert_eq!(f.components(), &[t("((a,b),(c,d));")]);
    }

    #[test]
    fn crossing_quartet() {
        // a and b meet at the root of T2 with neither a child of it, so the
        // pair case separates everything.
        let (f, cuts) = approximate_maf(&t("((a,b),(c,d));"), &t("((a,c),(b,d));")).unwrap();
        assert_eq!(f.len(), cuts + 1);
        assert!(cuts <= 8);
        assert_eq!(f.len(), 4);
    }

    #[test]
    fn select_u_prefers_smallest_child() {
        let s = state("((a,b),c);", "((a,b),c);");
        assert_eq!(s.select_u().unwrap(), vec![tx(&s, "a"), tx(&s, "b")]);
        let s = state("((c,d),(a,b));", "((c,d),(a,b));");
        assert_eq!(s.select_u().unwrap(), vec![tx(&s, "a"), tx(&s, "b")]);
        let s = state("(a,b,c);", "(a,b,c);");
        assert_eq!(s.select_u().unwrap().len(), 3);
        let s = state("a;", "a;");
        assert!(s.select_u().is_err());
    }

    #[test]
    fn collapse_with_siblings_in_t1() {
        let mut s = state("(a,b,x);", "((a,b),x);");
        let (a, b) = (tx(&s, "a"), tx(&s, "b"));
        assert_eq!(s.next_step(), Step::Collapse(a, b));
        let merged = s.apply_case0a(a, b).unwrap();
        assert_eq!(s.t1_leaf_count(), 2);
        assert_eq!(s.cut_count(), 0);
        // F2 had no siblings for the pair: its parent became the new leaf.
        assert_eq!(
            s.log(),
            &[LogRecord::Collapse {
                synthetic: merged,
                pair: (a, b),
                had_siblings: false
            }]
        );
    }

    #[test]
    fn collapse_requires_common_parent() {
        let mut s = state("((a,b),c);", "((a,c),b);");
        let (a, b) = (tx(&s, "a"), tx(&s, "b"));
        assert!(matches!(s.apply_case0a(a, b), Err(Error::Precondition(_))));
    }

    #[test]
    fn remove_isolated_leaf() {
        let mut s = state("((a,b),c);", "((a,b),c);");
        let c = tx(&s, "c");
        assert!(s.apply_case0b(c).is_err());
        let mut s = state("((a,c),b);", "((a,b),c);");
        let (a, c) = (tx(&s, "a"), tx(&s, "c"));
        // Make c isolated by cutting it off.
        assert!(s.cut_taxa(&[c]));
        assert_eq!(s.next_step(), Step::RemoveIsolated(c));
        s.apply_case0b(c).unwrap();
        assert_eq!(s.t1_leaf_count(), 2);
        assert_eq!(s.t1_node_count(), 3);
        assert!(s.taxon("c").is_none());
        assert!(s.taxon("a") == Some(a));
        while s.step().unwrap() {}
        let f = s.expand().unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.components()[1], PhyloTree::leaf("c"));
    }

    #[test]
    fn separate_all_charges_one_cut_per_leaf() {
        let mut s = state("((a,b),(c,d));", "((a,c),(b,d));");
        let (a, b, c) = (tx(&s, "a"), tx(&s, "b"), tx(&s, "c"));
        assert!(s.cut_taxa(&[a, c]));
        assert_eq!(s.next_step(), Step::SeparateAll(vec![a, b]));
        assert_eq!(s.apply_case0c().unwrap(), 2);
        assert_eq!(s.cut_count(), 3);

        let mut s = state("((a,b,c),(x,y,z));", "((a,x),(b,y),(c,z));");
        let ax = [tx(&s, "a"), tx(&s, "x")];
        let by = [tx(&s, "b"), tx(&s, "y")];
        assert!(s.cut_taxa(&ax));
        assert!(s.cut_taxa(&by));
        assert_eq!(s.apply_case0c().unwrap(), 3);
        assert_eq!(s.cut_count(), 5);
        assert_eq!(s.t1_leaf_count(), 3);
    }

    #[test]
    fn case1_cuts() {
        // T1 groups c1 and c2 so that both lie in one F2 component.
        let mut s = state("((p,q),(x,y));", "((p,x),(q,y));");
        let (p, q) = (tx(&s, "p"), tx(&s, "q"));
        assert_eq!(s.select_pair().unwrap(), (p, q, PairCase::One));
        // The last target is the whole remaining component and is skipped.
        assert_eq!(s.apply_case1(p, q).unwrap(), 3);
        assert_eq!(s.f2_components(), 4);

        let mut s = state("((p,q),x,y,z);", "(((p,x),(q,y)),z);");
        assert_eq!(s.apply_case1(p, q).unwrap(), 4);
        assert_eq!(s.f2_components(), 5);
    }

    #[test]
    fn case2_cuts() {
        let mut s = state("((p,q),y,z);", "((p,(q,y)),z);");
        let (p, q) = (tx(&s, "p"), tx(&s, "q"));
        assert_eq!(s.select_pair().unwrap(), (p, q, PairCase::Two));
        // S1 is empty once p, q and S2 are gone.
        assert_eq!(s.apply_case2(p, q).unwrap(), 3);
        assert_eq!(s.f2_components(), 4);

        let mut s = state("((p,q),w,y,z);", "((p,w,(q,y)),z);");
        assert_eq!(s.apply_case2(p, q).unwrap(), 4);
        assert_eq!(s.f2_components(), 5);
        assert!(s.apply_case1(p, q).is_err());
    }

    #[test]
    fn deeper_pair_wins() {
        // (a,b) and (a,c) meet at the root, (b,c) two levels below it.
        let s = state("((a,b,c),d,x,y,z);", "((a,x),(((b,y),(c,z)),d));");
        let (b, c) = (tx(&s, "b"), tx(&s, "c"));
        assert_eq!(s.select_pair().unwrap(), (b, c, PairCase::One));
    }

    #[test]
    fn deterministic() {
        let a = t("(((a,b),c),(d,(e,f)),g);");
        let b = t("((a,(d,g)),(b,e),(c,f));");
        assert_eq!(approximate_maf(&a, &b).unwrap(), approximate_maf(&a, &b).unwrap());
    }

    #[test]
    fn rejects_mismatched_leaves() {
        assert!(matches!(
            approximate_maf(&t("(a,b);"), &t("(a,c);")),
            Err(Error::LabelMismatch(_))
        ));
    }
}
