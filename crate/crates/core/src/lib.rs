//! Agreement forests of two rooted, possibly multifurcating phylogenetic trees.
//!
//! The crate provides
//!
//! * a polynomial-time 4-approximation for the maximum agreement forest
//!   problem ([`approx::approximate_maf`]),
//! * an exact `O(4^k poly(n))` bounded search for the same problem
//!   ([`fpt::solve_maf_exact`]),
//! * an approximation pipeline for maximum *acyclic* agreement forests (and
//!   hence the hybridization number) that combines an agreement forest with
//!   a weighted directed feedback vertex set solver ([`maaf::approximate_maaf`]),
//! * brute-force reference solvers and instance generators for testing.

pub mod approx;
pub mod dfvs;
pub mod error;
pub mod forest;
pub mod fpt;
pub mod generate;
pub mod maaf;
pub mod newick;
pub mod oracle;
mod taxa;
pub mod tree;
mod work;

pub use error::{Error, Result};
pub use forest::{is_agreement_forest, is_forest_for, Forest, Verdict, Violation};
pub use newick::{parse_forest, parse_newick, parse_newick_trees, write_forest, write_newick};
pub use tree::{common_refinement, Cluster, Embedding, NodeId, PhyloTree, Shape};
