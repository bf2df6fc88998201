//! Exact maximum agreement forest by bounded search.
//!
//! Cases 0a and 0b of the approximation never cost anything and are applied
//! as reductions. Case 0c branches on which of the two smallest leaves of
//! `C` becomes a singleton; the pair cases branch on which of their four
//! cuts to make. Every branch spends one unit of budget, so a search with
//! budget `k` visits at most `4^d` nodes at depth `d`.

use crate::approx::{finish, ApproxState, Step, Taxon};
use crate::error::Result;
use crate::forest::Forest;
use crate::tree::PhyloTree;

/// A state of the search together with the number of cuts it may still make.
#[derive(Clone, Debug)]
pub struct SearchNode {
    pub state: ApproxState,
    pub budget: usize,
}

/// Node counts of one deepening round, indexed by depth.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundStats {
    pub budget: usize,
    pub nodes_per_depth: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub rounds: Vec<RoundStats>,
}

impl SearchStats {
    pub fn total_nodes(&self) -> u64 {
        self.rounds.iter().flat_map(|r| &r.nodes_per_depth).sum()
    }

    /// Whether no round visited more than `4^d` nodes at any depth `d`.
    pub fn within_branching_bound(&self) -> bool {
        self.rounds.iter().all(|r| {
            r.nodes_per_depth
                .iter()
                .enumerate()
                .all(|(d, &n)| 4u64.checked_pow(d as u32).map_or(true, |b| n <= b))
        })
    }
}

#[derive(Clone, Debug)]
pub struct ExactOutcome {
    /// The forest and its number of components minus one, if within budget.
    pub solution: Option<(Forest, usize)>,
    pub stats: SearchStats,
}

/// Applies cases 0a and 0b until neither applies; returns the next step.
pub fn reduce(state: &mut ApproxState) -> Result<Step> {
    loop {
        match state.next_step() {
            Step::Collapse(a, b) => {
                state.apply_case0a(a, b)?;
            }
            Step::RemoveIsolated(c) => state.apply_case0b(c)?,
            other => return Ok(other),
        }
    }
}

/// Children of an unresolved node, one per candidate cut. Nodes without
/// budget have none.
pub fn branch_case(node: &SearchNode, step: &Step) -> Vec<SearchNode> {
    if node.budget == 0 {
        return Vec::new();
    }
    let child = |f: &dyn Fn(&mut ApproxState)| {
        let mut state = node.state.clone();
        f(&mut state);
        SearchNode {
            state,
            budget: node.budget - 1,
        }
    };
    match step {
        Step::Finished | Step::Collapse(..) | Step::RemoveIsolated(_) => Vec::new(),
        Step::SeparateAll(c) => c
            .iter()
            .take(2)
            .map(|&x| child(&|s| s.separate(x)))
            .collect(),
        &Step::Pair(c1, c2, _) => {
            let s = &node.state;
            // In case 2 the parent of c1 is the common ancestor, so this is
            // everything below it except c1.
            let group1: Vec<Taxon> = s.sibling_taxa(c1);
            let group2 = s.sibling_taxa(c2);
            [vec![c1], vec![c2], group1, group2]
                .iter()
                .map(|set| {
                    child(&|s| {
                        let cut = s.cut_taxa(set);
                        debug_assert!(cut, "branch cut must separate something");
                    })
                })
                .collect()
        }
    }
}

struct Search {
    stats: RoundStats,
}

impl Search {
    fn visit(&mut self, depth: usize) {
        if self.stats.nodes_per_depth.len() <= depth {
            self.stats.nodes_per_depth.resize(depth + 1, 0);
        }
        self.stats.nodes_per_depth[depth] += 1;
    }

    fn run(&mut self, mut node: SearchNode, depth: usize) -> Result<Option<ApproxState>> {
        self.visit(depth);
        let step = reduce(&mut node.state)?;
        match &step {
            Step::Finished => return Ok(Some(node.state)),
            // At most one leaf of C can stay attached to anything.
            Step::SeparateAll(c) if node.budget + 1 < c.len() => return Ok(None),
            _ => {}
        }
        for child in branch_case(&node, &step) {
            if let Some(done) = self.run(child, depth + 1)? {
                return Ok(Some(done));
            }
        }
        Ok(None)
    }
}

/// Iterative deepening over `k = 0..=max_k`, keeping per-round node counts.
pub fn search_maf_exact(t1: &PhyloTree, t2: &PhyloTree, max_k: usize) -> Result<ExactOutcome> {
    let root = ApproxState::new(t1, t2)?;
    let mut stats = SearchStats::default();
    for k in 0..=max_k {
        let mut search = Search {
            stats: RoundStats {
                budget: k,
                nodes_per_depth: Vec::new(),
            },
        };
        let found = search.run(
            SearchNode {
                state: root.clone(),
                budget: k,
            },
            0,
        )?;
        stats.rounds.push(search.stats);
        if let Some(state) = found {
            debug_assert_eq!(state.cut_count(), k);
            let forest = finish(&state, t1, t2)?;
            let size = forest.len() - 1;
            return Ok(ExactOutcome {
                solution: Some((forest, size)),
                stats,
            });
        }
    }
    Ok(ExactOutcome {
        solution: None,
        stats,
    })
}

/// A maximum agreement forest and its size minus one, or `None` when that
/// exceeds `max_k`.
pub fn solve_maf_exact(t1: &PhyloTree, t2: &PhyloTree, max_k: usize) -> Result<Option<(Forest, usize)>> {
    Ok(search_maf_exact(t1, t2, max_k)?.solution)
}
