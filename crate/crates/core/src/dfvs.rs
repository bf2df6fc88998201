//! Weighted directed feedback vertex sets.
//!
//! Besides the general solvers this module knows about the two vertex
//! classes of the agreement-forest instance: vertices standing for internal
//! vertices of a forest and vertices standing for its edges. Those tags drive
//! [`properize`].

use std::fmt::Write as _;

use petgraph::algo::{is_cyclic_directed, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::NodeFiltered;

use crate::error::{Error, Result};
use crate::tree::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    /// An internal vertex of a forest component.
    Vertex,
    /// The edge of a forest component entering `node`.
    Edge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VertexTag {
    pub class: VertexClass,
    pub component: usize,
    pub node: NodeId,
}

/// Digraph with integer vertex weights. Parallel edges are merged; self
/// loops are allowed.
#[derive(Clone, Debug, Default)]
pub struct WeightedDigraph {
    weights: Vec<u64>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    tags: Option<Vec<VertexTag>>,
    graph: DiGraph<(), ()>,
}

impl WeightedDigraph {
    pub fn new(weights: Vec<u64>) -> Self {
        let n = weights.len();
        let mut graph = DiGraph::with_capacity(n, 0);
        for _ in 0..n {
            graph.add_node(());
        }
        WeightedDigraph {
            weights,
            out: vec![Vec::new(); n],
            inc: vec![Vec::new(); n],
            tags: None,
            graph,
        }
    }

    pub fn with_tags(weights: Vec<u64>, tags: Vec<VertexTag>) -> Self {
        assert_eq!(weights.len(), tags.len(), "one tag per vertex");
        let mut g = Self::new(weights);
        g.tags = Some(tags);
        g
    }

    /// Adds `u -> v`; returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        match self.out[u].binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.out[u].insert(i, v);
                let j = self.inc[v].binary_search(&u).unwrap_err();
                self.inc[v].insert(j, u);
                self.graph.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
                true
            }
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, vs)| vs.iter().map(move |&v| (u, v)))
    }

    pub fn tags(&self) -> Option<&[VertexTag]> {
        self.tags.as_deref()
    }

    pub fn tag(&self, v: usize) -> Option<VertexTag> {
        self.tags.as_ref().map(|t| t[v])
    }

    pub fn has_self_loop(&self, v: usize) -> bool {
        self.out[v].binary_search(&v).is_ok()
    }

    pub fn weight_of(&self, set: &[usize]) -> u64 {
        set.iter().map(|&v| self.weights[v]).sum()
    }

    fn mask(&self, removed: &[usize]) -> Vec<bool> {
        let mut keep = vec![true; self.len()];
        for &v in removed {
            keep[v] = false;
        }
        keep
    }
}

/// A feedback vertex set: sorted vertices and their total weight.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FvsSolution {
    pub vertices: Vec<usize>,
    pub weight: u64,
}

impl FvsSolution {
    pub fn new(g: &WeightedDigraph, mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let weight = g.weight_of(&vertices);
        FvsSolution { vertices, weight }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Anything that produces a feedback vertex set, such as a wrapper around an
/// external exact solver.
pub trait DfvsSolver {
    fn solve(&self, g: &WeightedDigraph) -> FvsSolution;
}

pub struct ExactSolver;
pub struct GreedySolver;

impl DfvsSolver for ExactSolver {
    fn solve(&self, g: &WeightedDigraph) -> FvsSolution {
        solve_dfvs_exact(g)
    }
}

impl DfvsSolver for GreedySolver {
    fn solve(&self, g: &WeightedDigraph) -> FvsSolution {
        solve_dfvs_greedy(g)
    }
}

pub fn is_acyclic(g: &WeightedDigraph) -> bool {
    !is_cyclic_directed(&g.graph)
}

/// Is `g` minus `removed` acyclic?
pub fn is_fvs(g: &WeightedDigraph, removed: &[usize]) -> bool {
    let keep = g.mask(removed);
    acyclic_within(g, &keep)
}

fn acyclic_within(g: &WeightedDigraph, keep: &[bool]) -> bool {
    let view = NodeFiltered::from_fn(&g.graph, |n: NodeIndex| keep[n.index()]);
    !is_cyclic_directed(&view)
}

/// Minimum-weight feedback vertex set by branch and bound.
///
/// Sources, sinks and self loops are reduced first, strongly connected
/// components are solved separately, and branching goes over the vertices of
/// a shortest cycle. Lower bounds come from packing disjoint cycles.
pub fn solve_dfvs_exact(g: &WeightedDigraph) -> FvsSolution {
    let active = vec![true; g.len()];
    let forbidden = vec![false; g.len()];
    let (_, set) = Exact { g }
        .min_fvs(active, &forbidden, u64::MAX)
        .expect("the whole vertex set is a feedback vertex set");
    FvsSolution::new(g, set)
}

struct Exact<'g> {
    g: &'g WeightedDigraph,
}

impl Exact<'_> {
    /// Optimum over the active vertices, provided it is below `limit`.
    /// Forbidden vertices may not be chosen.
    fn min_fvs(&self, mut active: Vec<bool>, forbidden: &[bool], limit: u64) -> Option<(u64, Vec<usize>)> {
        let mut chosen = Vec::new();
        let mut weight = 0u64;
        loop {
            let mut changed = false;
            for v in 0..self.g.len() {
                if !active[v] {
                    continue;
                }
                if self.g.has_self_loop(v) {
                    if forbidden[v] {
                        return None;
                    }
                    chosen.push(v);
                    weight = weight.saturating_add(self.g.weight(v));
                    active[v] = false;
                    changed = true;
                } else if !self.g.predecessors(v).iter().any(|&u| active[u])
                    || !self.g.successors(v).iter().any(|&u| active[u])
                {
                    active[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if weight >= limit {
            return None;
        }
        let view = NodeFiltered::from_fn(&self.g.graph, |n: NodeIndex| active[n.index()]);
        let mut sccs: Vec<Vec<usize>> = tarjan_scc(&view)
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|n| n.index()).collect();
                c.sort_unstable();
                c
            })
            .filter(|c| c.len() > 1)
            .collect();
        sccs.sort();
        let masks: Vec<Vec<bool>> = sccs
            .iter()
            .map(|c| {
                let mut m = vec![false; self.g.len()];
                for &v in c {
                    m[v] = true;
                }
                m
            })
            .collect();
        let mut bounds = Vec::with_capacity(masks.len());
        for m in &masks {
            bounds.push(self.packing_bound(m, forbidden)?);
        }
        let mut rest: u64 = bounds.iter().sum();
        for (i, m) in masks.into_iter().enumerate() {
            rest -= bounds[i];
            let room = limit.saturating_sub(weight).saturating_sub(rest);
            let (w, set) = self.branch(m, forbidden, room, bounds[i])?;
            weight += w;
            chosen.extend(set);
        }
        (weight < limit).then_some((weight, chosen))
    }

    /// Optimum of one strongly connected component, if below `limit`.
    fn branch(&self, active: Vec<bool>, forbidden: &[bool], limit: u64, bound: u64) -> Option<(u64, Vec<usize>)> {
        if bound >= limit {
            return None;
        }
        let cycle = shortest_cycle(self.g, &active).expect("a nontrivial component has a cycle");
        let mut best: Option<(u64, Vec<usize>)> = None;
        let mut limit = limit;
        let mut forbid = forbidden.to_vec();
        let mut order = cycle;
        order.sort_unstable();
        for v in order {
            if forbid[v] {
                continue;
            }
            let wv = self.g.weight(v);
            if wv < limit {
                let mut sub = active.clone();
                sub[v] = false;
                if let Some((w, mut set)) = self.min_fvs(sub, &forbid, limit - wv) {
                    set.push(v);
                    limit = w + wv;
                    best = Some((limit, set));
                }
            }
            // Later branches keep v.
            forbid[v] = true;
        }
        best
    }

    /// Weight of a greedy packing of vertex-disjoint cycles, each charged its
    /// cheapest choosable vertex. `None` if some cycle is entirely forbidden.
    fn packing_bound(&self, active: &[bool], forbidden: &[bool]) -> Option<u64> {
        let mut left = active.to_vec();
        let mut total = 0u64;
        while let Some(cycle) = shortest_cycle(self.g, &left) {
            let cheapest = cycle
                .iter()
                .filter(|&&v| !forbidden[v])
                .map(|&v| self.g.weight(v))
                .min()?;
            total += cheapest;
            for v in cycle {
                left[v] = false;
            }
        }
        Some(total)
    }
}

/// A shortest directed cycle among the active vertices, as a vertex list.
/// Among equally short cycles the one found from the smallest start wins.
fn shortest_cycle(g: &WeightedDigraph, active: &[bool]) -> Option<Vec<usize>> {
    let n = g.len();
    let mut best: Option<Vec<usize>> = None;
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for s in (0..n).filter(|&s| active[s]) {
        if g.has_self_loop(s) {
            return Some(vec![s]);
        }
        if best.as_ref().is_some_and(|b| b.len() == 2) {
            break;
        }
        seen.iter_mut().for_each(|x| *x = false);
        queue.clear();
        seen[s] = true;
        queue.push_back((s, 1usize));
        let mut found = None;
        'bfs: while let Some((x, d)) = queue.pop_front() {
            if best.as_ref().is_some_and(|b| d >= b.len()) {
                break;
            }
            for &y in g.successors(x) {
                if !active[y] {
                    continue;
                }
                if y == s {
                    found = Some(x);
                    break 'bfs;
                }
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = x;
                    queue.push_back((y, d + 1));
                }
            }
        }
        if let Some(mut x) = found {
            let mut cycle = vec![x];
            while x != s {
                x = prev[x];
                cycle.push(x);
            }
            cycle.reverse();
            best = Some(cycle);
        }
    }
    best
}

/// Repeatedly takes the vertex with the largest `indeg * outdeg / weight`
/// in the reduced graph, then drops redundant choices.
pub fn solve_dfvs_greedy(g: &WeightedDigraph) -> FvsSolution {
    let n = g.len();
    let mut active = vec![true; n];
    let mut chosen = Vec::new();
    loop {
        loop {
            let mut changed = false;
            for v in 0..n {
                if !active[v] {
                    continue;
                }
                if g.has_self_loop(v) {
                    chosen.push(v);
                    active[v] = false;
                    changed = true;
                } else if !g.predecessors(v).iter().any(|&u| active[u])
                    || !g.successors(v).iter().any(|&u| active[u])
                {
                    active[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let score = |v: usize| {
            let i = g.predecessors(v).iter().filter(|&&u| active[u]).count() as u128;
            let o = g.successors(v).iter().filter(|&&u| active[u]).count() as u128;
            (i * o, g.weight(v) as u128)
        };
        // Compare s1/w1 > s2/w2 as s1*w2 > s2*w1; weight 0 beats everything.
        let better = |a: (u128, u128), b: (u128, u128)| match (a.1, b.1) {
            (0, 0) => a.0 > b.0,
            (0, _) => true,
            (_, 0) => false,
            _ => a.0 * b.1 > b.0 * a.1,
        };
        let mut pick: Option<(usize, (u128, u128))> = None;
        for v in (0..n).filter(|&v| active[v]) {
            let s = score(v);
            if pick.map_or(true, |(_, p)| better(s, p)) {
                pick = Some((v, s));
            }
        }
        match pick {
            Some((v, _)) => {
                chosen.push(v);
                active[v] = false;
            }
            None => break,
        }
    }
    minimalize(g, &FvsSolution::new(g, chosen)).expect("greedy result is a feedback vertex set")
}

/// Drops vertices from `f`, in increasing order, while the rest remains a
/// feedback vertex set.
pub fn minimalize(g: &WeightedDigraph, f: &FvsSolution) -> Result<FvsSolution> {
    let mut keep = g.mask(&f.vertices);
    if !acyclic_within(g, &keep) {
        return Err(Error::NotFeedbackSet);
    }
    let mut kept = Vec::with_capacity(f.vertices.len());
    for &v in &f.vertices {
        keep[v] = true;
        if !acyclic_within(g, &keep) {
            keep[v] = false;
            kept.push(v);
        }
    }
    Ok(FvsSolution::new(g, kept))
}

/// Why `f` is not proper, if it is not.
pub fn properness_violation(g: &WeightedDigraph, f: &FvsSolution) -> Result<Option<String>> {
    let tags = g.tags().ok_or(Error::Untagged)?;
    if !is_fvs(g, &f.vertices) {
        return Err(Error::NotFeedbackSet);
    }
    let mut keep = g.mask(&f.vertices);
    for &v in &f.vertices {
        keep[v] = true;
        let redundant = acyclic_within(g, &keep);
        keep[v] = false;
        if redundant {
            return Ok(Some(format!("vertex {v} can be dropped")));
        }
    }
    for v in 0..g.len() {
        if tags[v].class != VertexClass::Vertex {
            continue;
        }
        let out = g.successors(v).len();
        let hit = g.successors(v).iter().filter(|&&c| f.contains(c)).count();
        if hit + 2 > out && hit > 0 {
            return Ok(Some(format!(
                "vertex {v} has {hit} of its {out} children in the set"
            )));
        }
    }
    Ok(None)
}

pub fn is_proper(g: &WeightedDigraph, f: &FvsSolution) -> Result<bool> {
    Ok(properness_violation(g, f)?.is_none())
}

/// Turns a feedback vertex set into a proper one of no larger weight by
/// trading a forest vertex for its edge children whenever all but at most
/// one of them are chosen.
pub fn properize(g: &WeightedDigraph, f: &FvsSolution) -> Result<FvsSolution> {
    let tags = g.tags().ok_or(Error::Untagged)?;
    let mut cur = minimalize(g, f)?;
    for _ in 0..=g.len() {
        let swap = (0..g.len()).find(|&v| {
            tags[v].class == VertexClass::Vertex && {
                let out = g.successors(v).len();
                let hit = g.successors(v).iter().filter(|&&c| cur.contains(c)).count();
                hit > 0 && hit + 1 >= out
            }
        });
        let Some(v) = swap else {
            return Ok(cur);
        };
        let mut next: Vec<usize> = cur
            .vertices
            .iter()
            .copied()
            .filter(|c| g.successors(v).binary_search(c).is_err())
            .collect();
        next.push(v);
        let next = minimalize(g, &FvsSolution::new(g, next))?;
        debug_assert!(next.weight <= cur.weight);
        cur = next;
    }
    panic!("properize did not settle within |V| swaps");
}

/// Plain-text dump: `# weight <v> <w>` lines, then one `u v` line per edge.
/// Tagged vertices are written `v<i>` or `e<i>` by class.
pub fn write_edge_list(g: &WeightedDigraph) -> String {
    let name = |v: usize| match g.tag(v).map(|t| t.class) {
        Some(VertexClass::Vertex) => format!("v{v}"),
        Some(VertexClass::Edge) => format!("e{v}"),
        None => v.to_string(),
    };
    let mut out = String::new();
    for v in 0..g.len() {
        let _ = writeln!(out, "# weight {} {}", name(v), g.weight(v));
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", name(u), name(v));
    }
    out
}
