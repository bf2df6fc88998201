//! Random and exhaustive tree generation for tests and benchmarks.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::tree::{PhyloTree, Shape};

/// Default probability of contracting an internal edge of a random tree.
pub const DEFAULT_CONTRACTION: f64 = 0.3;

/// Label of the `i`-th generated leaf.
pub fn leaf_label(i: usize) -> String {
    format!("x{i}")
}

/// Mutable arena used while generating.
#[derive(Clone, Debug)]
struct Arena {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    label: Vec<Option<String>>,
    root: usize,
}

impl Arena {
    fn from_tree(t: &PhyloTree) -> Self {
        let mut a = Arena {
            parent: Vec::new(),
            children: Vec::new(),
            label: Vec::new(),
            root: 0,
        };
        for v in t.nodes() {
            a.parent.push(t.parent(v).map(|p| p.index()));
            a.children.push(t.children(v).iter().map(|c| c.index()).collect());
            a.label.push(t.label(v).map(str::to_owned));
        }
        a
    }

    fn push(&mut self, label: Option<String>) -> usize {
        self.parent.push(None);
        self.children.push(Vec::new());
        self.label.push(label);
        self.parent.len() - 1
    }

    fn attach(&mut self, p: usize, c: usize) {
        self.parent[c] = Some(p);
        self.children[p].push(c);
    }

    fn detach(&mut self, c: usize) {
        if let Some(p) = self.parent[c].take() {
            self.children[p].retain(|&x| x != c);
        }
    }

    /// Inserts a new parent on the edge above `x`, or above the root.
    fn subdivide_above(&mut self, x: usize) -> usize {
        let mid = self.push(None);
        match self.parent[x] {
            Some(p) => {
                self.detach(x);
                self.attach(p, mid);
            }
            None => self.root = mid,
        }
        self.attach(mid, x);
        mid
    }

    fn reachable(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    fn shape(&self, v: usize) -> Shape {
        match &self.label[v] {
            Some(l) => Shape::Leaf(l.clone()),
            None => Shape::Internal(self.children[v].iter().map(|&c| self.shape(c)).collect()),
        }
    }

    fn to_tree(&self) -> PhyloTree {
        PhyloTree::from_shape(self.shape(self.root)).expect("generated trees are valid")
    }
}

/// Random tree on `n` leaves labelled by [`leaf_label`]: leaves are attached
/// one by one to a uniformly chosen edge (or above the root), then every
/// internal edge is contracted with probability `contraction`.
pub fn random_tree<R: Rng>(n: usize, contraction: f64, rng: &mut R) -> PhyloTree {
    assert!(n >= 1, "a tree needs a leaf");
    let mut a = Arena {
        parent: Vec::new(),
        children: Vec::new(),
        label: Vec::new(),
        root: 0,
    };
    a.push(Some(leaf_label(0)));
    for i in 1..n {
        let alive = a.reachable();
        let x = alive[rng.gen_range(0..alive.len())];
        let mid = a.subdivide_above(x);
        let leaf = a.push(Some(leaf_label(i)));
        a.attach(mid, leaf);
    }
    for v in a.reachable() {
        if v != a.root && a.label[v].is_none() && rng.gen_bool(contraction) {
            let p = a.parent[v].expect("non-root");
            let kids = std::mem::take(&mut a.children[v]);
            a.detach(v);
            for c in kids {
                a.attach(p, c);
            }
        }
    }
    a.to_tree()
}

/// One rooted subtree prune and regraft: a random non-root subtree is cut
/// off and reattached either as an extra child of a random internal vertex
/// or on a random edge of what remains (possibly above its root).
pub fn random_spr<R: Rng>(t: &PhyloTree, rng: &mut R) -> PhyloTree {
    if t.leaf_count() < 3 {
        return t.clone();
    }
    let mut a = Arena::from_tree(t);
    let candidates: Vec<usize> = (1..a.parent.len()).collect();
    let v = candidates[rng.gen_range(0..candidates.len())];
    let p = a.parent[v].expect("non-root");
    a.detach(v);
    if a.children[p].len() == 1 {
        // Suppress p.
        let only = a.children[p][0];
        a.detach(only);
        match a.parent[p] {
            Some(g) => {
                a.detach(p);
                a.attach(g, only);
            }
            None => a.root = only,
        }
    }
    let rest = a.reachable();
    let x = rest[rng.gen_range(0..rest.len())];
    if a.label[x].is_none() && rng.gen_bool(0.5) {
        a.attach(x, v);
    } else {
        let mid = a.subdivide_above(x);
        a.attach(mid, v);
    }
    a.to_tree()
}

/// A random tree and a copy changed by `moves` random prune-and-regraft
/// operations, from one seeded generator. The agreement forest of the pair
/// has at most `moves + 1` components.
pub fn generate_pair(n: usize, moves: usize, seed: u64, contraction: f64) -> (PhyloTree, PhyloTree) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t1 = random_tree(n, contraction, &mut rng);
    let mut t2 = t1.clone();
    for _ in 0..moves {
        t2 = random_spr(&t2, &mut rng);
    }
    (t1, t2)
}

/// Every rooted phylogenetic tree on the given labels, each exactly once.
pub fn enumerate_trees(labels: &[&str]) -> Vec<PhyloTree> {
    let Some((first, rest)) = labels.split_first() else {
        return Vec::new();
    };
    let mut shapes = vec![Shape::leaf(*first)];
    for l in rest {
        shapes = shapes.iter().flat_map(|s| insertions(s, l)).collect();
    }
    shapes
        .into_iter()
        .map(|s| PhyloTree::from_shape(s).expect("distinct labels"))
        .collect()
}

/// All ways of adding leaf `l`: above any vertex, or as a new child of an
/// internal vertex.
fn insertions(s: &Shape, l: &str) -> Vec<Shape> {
    let mut out = vec![Shape::Internal(vec![s.clone(), Shape::leaf(l)])];
    if let Shape::Internal(kids) = s {
        let mut more = kids.clone();
        more.push(Shape::leaf(l));
        out.push(Shape::Internal(more));
        for (i, k) in kids.iter().enumerate() {
            for alt in insertions(k, l) {
                let mut changed = kids.clone();
                changed[i] = alt;
                out.push(Shape::Internal(changed));
            }
        }
    }
    out
}

/// Label-free description of a tree's shape, equal for isomorphic shapes.
pub fn shape_key(t: &PhyloTree) -> String {
    fn key(t: &PhyloTree, v: crate::tree::NodeId) -> String {
        if t.is_leaf(v) {
            return "*".into();
        }
        let mut parts: Vec<String> = t.children(v).iter().map(|&c| key(t, c)).collect();
        parts.sort();
        format!("({})", parts.join(","))
    }
    key(t, t.root())
}

/// Pairs covering every unlabelled shape of the first tree against every
/// labelled second tree on `n` leaves.
pub fn exhaustive_pairs(n: usize) -> Vec<(PhyloTree, PhyloTree)> {
    let labels: Vec<String> = (0..n).map(leaf_label).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let all = enumerate_trees(&refs);
    let mut firsts: BTreeMap<String, PhyloTree> = BTreeMap::new();
    for t in &all {
        firsts.entry(shape_key(t)).or_insert_with(|| t.clone());
    }
    firsts
        .values()
        .flat_map(|t1| all.iter().map(move |t2| (t1.clone(), t2.clone())))
        .collect()
}
