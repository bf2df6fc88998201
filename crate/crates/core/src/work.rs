//! Mutable, cheaply clonable forest over integer taxa.
//!
//! Vertices live in flat arrays with sibling links, so cloning a search state
//! is a handful of `memcpy`s. Dead vertices stay in the arrays.

use crate::tree::PhyloTree;

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct WorkForest {
    parent: Vec<u32>,
    first_child: Vec<u32>,
    next_sib: Vec<u32>,
    prev_sib: Vec<u32>,
    degree: Vec<u32>,
    label: Vec<u32>,
    alive: Vec<bool>,
    leaf_of: Vec<u32>,
    components: usize,
    leaves: usize,
}

impl WorkForest {
    /// Copies `t`, numbering leaves with `taxon_of`. `taxon_capacity` bounds
    /// every taxon id that will ever be used, synthetic ones included.
    pub fn from_tree(t: &PhyloTree, taxon_of: impl Fn(&str) -> u32, taxon_capacity: usize) -> Self {
        let mut f = WorkForest {
            parent: Vec::with_capacity(t.node_count()),
            first_child: Vec::with_capacity(t.node_count()),
            next_sib: Vec::with_capacity(t.node_count()),
            prev_sib: Vec::with_capacity(t.node_count()),
            degree: Vec::with_capacity(t.node_count()),
            label: Vec::with_capacity(t.node_count()),
            alive: Vec::with_capacity(t.node_count()),
            leaf_of: vec![NIL; taxon_capacity],
            components: 1,
            leaves: 0,
        };
        for v in t.nodes() {
            let label = t.label(v).map_or(NIL, &taxon_of);
            let x = f.push_node(label);
            debug_assert_eq!(x as usize, v.index());
            if let Some(p) = t.parent(v) {
                f.link_child(p.index() as u32, x);
            }
        }
        f
    }

    fn push_node(&mut self, label: u32) -> u32 {
        let x = self.parent.len() as u32;
        self.parent.push(NIL);
        self.first_child.push(NIL);
        self.next_sib.push(NIL);
        self.prev_sib.push(NIL);
        self.degree.push(0);
        self.label.push(label);
        self.alive.push(true);
        if label != NIL {
            self.leaf_of[label as usize] = x;
            self.leaves += 1;
        }
        x
    }

    fn link_child(&mut self, p: u32, c: u32) {
        let (pu, cu) = (p as usize, c as usize);
        self.parent[cu] = p;
        self.prev_sib[cu] = NIL;
        self.next_sib[cu] = self.first_child[pu];
        if self.first_child[pu] != NIL {
            self.prev_sib[self.first_child[pu] as usize] = c;
        }
        self.first_child[pu] = c;
        self.degree[pu] += 1;
    }

    fn unlink(&mut self, c: u32) {
        let cu = c as usize;
        let p = self.parent[cu];
        debug_assert!(p != NIL, "unlinking a root");
        let (prev, next) = (self.prev_sib[cu], self.next_sib[cu]);
        if prev != NIL {
            self.next_sib[prev as usize] = next;
        } else {
            self.first_child[p as usize] = next;
        }
        if next != NIL {
            self.prev_sib[next as usize] = prev;
        }
        self.degree[p as usize] -= 1;
        self.parent[cu] = NIL;
        self.prev_sib[cu] = NIL;
        self.next_sib[cu] = NIL;
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn node_count(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn leaf_node(&self, taxon: u32) -> Option<u32> {
        self.leaf_of
            .get(taxon as usize)
            .copied()
            .filter(|&x| x != NIL)
    }

    pub fn parent(&self, x: u32) -> Option<u32> {
        Some(self.parent[x as usize]).filter(|&p| p != NIL)
    }

    pub fn label(&self, x: u32) -> Option<u32> {
        Some(self.label[x as usize]).filter(|&l| l != NIL)
    }

    pub fn degree(&self, x: u32) -> usize {
        self.degree[x as usize] as usize
    }

    pub fn children(&self, x: u32) -> Children<'_> {
        Children {
            forest: self,
            next: self.first_child[x as usize],
        }
    }

    /// Live vertices without a parent.
    pub fn roots(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.alive.len() as u32).filter(move |&x| self.alive[x as usize] && self.parent[x as usize] == NIL)
    }

    /// Live internal vertices whose children are all leaves, with the sorted
    /// taxa of those children.
    pub fn leaf_parents(&self) -> impl Iterator<Item = (u32, Vec<u32>)> + '_ {
        (0..self.alive.len() as u32).filter_map(move |x| {
            let xu = x as usize;
            if !self.alive[xu] || self.label[xu] != NIL {
                return None;
            }
            let mut taxa = Vec::with_capacity(self.degree[xu] as usize);
            for c in self.children(x) {
                taxa.push(self.label(c)?);
            }
            taxa.sort_unstable();
            Some((x, taxa))
        })
    }

    pub fn root_of(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != NIL {
            x = self.parent[x as usize];
        }
        x
    }

    pub fn depth(&self, mut x: u32) -> usize {
        let mut d = 0;
        while self.parent[x as usize] != NIL {
            x = self.parent[x as usize];
            d += 1;
        }
        d
    }

    /// Lowest common ancestor of two vertices of the same component.
    pub fn lca(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a, b);
        let (mut da, mut db) = (self.depth(a), self.depth(b));
        while da > db {
            a = self.parent[a as usize];
            da -= 1;
        }
        while db > da {
            b = self.parent[b as usize];
            db -= 1;
        }
        while a != b {
            a = self.parent[a as usize];
            b = self.parent[b as usize];
            debug_assert!(a != NIL && b != NIL, "vertices in different components");
        }
        a
    }

    /// Taxa of the leaves below `x`.
    pub fn taxa_below(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            match self.label(y) {
                Some(t) => out.push(t),
                None => stack.extend(self.children(y)),
            }
        }
        out
    }

    fn kill(&mut self, x: u32) {
        self.alive[x as usize] = false;
    }

    /// Replaces an internal vertex that has exactly one child by that child.
    fn suppress_if_unary(&mut self, p: u32) {
        let pu = p as usize;
        if !self.alive[pu] || self.label[pu] != NIL || self.degree[pu] != 1 {
            return;
        }
        let child = self.first_child[pu];
        self.unlink(child);
        if let Some(g) = self.parent(p) {
            self.unlink(p);
            self.link_child(g, child);
        }
        self.kill(p);
    }

    /// Removes the edge above `x`; `x` becomes the root of a new component.
    pub fn detach(&mut self, x: u32) {
        let p = self.parent[x as usize];
        self.unlink(x);
        self.components += 1;
        self.suppress_if_unary(p);
    }

    /// Moves a proper subset of the children of `p` into a new component.
    /// More than one child gets a fresh common parent first.
    pub fn cut_group(&mut self, p: u32, kids: &[u32]) {
        debug_assert!(!kids.is_empty() && kids.len() < self.degree(p));
        if let [only] = kids {
            self.detach(*only);
            return;
        }
        let q = self.push_node(NIL);
        for &k in kids {
            self.unlink(k);
            self.link_child(q, k);
        }
        self.components += 1;
        self.suppress_if_unary(p);
    }

    /// Deletes a leaf entirely. A leaf that forms its own component takes
    /// the component with it.
    pub fn remove_leaf(&mut self, taxon: u32) {
        let x = self.leaf_of[taxon as usize];
        debug_assert!(x != NIL, "removing an absent taxon");
        self.leaf_of[taxon as usize] = NIL;
        self.leaves -= 1;
        match self.parent(x) {
            None => self.components -= 1,
            Some(p) => {
                self.unlink(x);
                self.suppress_if_unary(p);
            }
        }
        self.kill(x);
    }

    /// Merges two sibling leaves into one leaf carrying `merged`. Returns
    /// whether the pair had further siblings.
    pub fn collapse(&mut self, first: u32, second: u32, merged: u32) -> bool {
        let x1 = self.leaf_of[first as usize];
        let x2 = self.leaf_of[second as usize];
        let p = self.parent[x1 as usize];
        debug_assert!(p != NIL && p == self.parent[x2 as usize], "collapsing non-siblings");
        self.leaf_of[first as usize] = NIL;
        self.leaf_of[second as usize] = NIL;
        self.leaves -= 1;
        let had_siblings = self.degree[p as usize] > 2;
        self.unlink(x1);
        self.kill(x1);
        if had_siblings {
            self.label[x2 as usize] = merged;
            self.leaf_of[merged as usize] = x2;
        } else {
            self.unlink(x2);
            self.kill(x2);
            self.label[p as usize] = merged;
            self.leaf_of[merged as usize] = p;
        }
        had_siblings
    }

    /// Separates the given leaves from the rest of their component, either
    /// by removing the edge above their lowest common ancestor or by
    /// splitting off a group of its children. Returns `false` when the set is
    /// already a whole component. The set must be a cluster of one vertex or
    /// a union of clusters of children of one vertex.
    pub fn detach_taxa(&mut self, taxa: &[u32]) -> bool {
        debug_assert!(!taxa.is_empty());
        let nodes: Vec<u32> = taxa.iter().map(|&t| self.leaf_of[t as usize]).collect();
        let w = nodes[1..].iter().fold(nodes[0], |acc, &x| self.lca(acc, x));
        let below = self.taxa_below(w);
        if below.len() == taxa.len() {
            if self.parent[w as usize] == NIL {
                return false;
            }
            self.detach(w);
            return true;
        }
        let mut inside = vec![false; self.leaf_of.len()];
        for &t in taxa {
            inside[t as usize] = true;
        }
        let mut group = Vec::new();
        for k in self.children(w) {
            let sub = self.taxa_below(k);
            let hits = sub.iter().filter(|&&t| inside[t as usize]).count();
            if hits == sub.len() {
                group.push(k);
            } else {
                assert!(hits == 0, "leaf set is not a union of child clusters");
            }
        }
        group.sort_unstable();
        self.cut_group(w, &group);
        true
    }
}

pub(crate) struct Children<'a> {
    forest: &'a WorkForest,
    next: u32,
}

impl Iterator for Children<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.next == NIL {
            return None;
        }
        let x = self.next;
        self.next = self.forest.next_sib[x as usize];
        Some(x)
    }
}
