use thiserror::Error;

/// Errors produced by tree construction, the solvers and the validators.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed Newick text; `position` is a byte offset into the input.
    #[error("newick syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("duplicate leaf label `{0}`")]
    DuplicateLabel(String),
    #[error("leaf with an empty label")]
    EmptyLabel,
    #[error("empty tree")]
    EmptyTree,
    #[error("empty cluster")]
    EmptyCluster,
    /// The two inputs are not on the same taxon set.
    #[error("leaf sets differ: {0}")]
    LabelMismatch(String),
    #[error("label `{0}` is not a leaf of the tree")]
    UnknownLabel(String),
    #[error("invalid cut: {0}")]
    InvalidCut(String),
    /// A case handler was called in a state it does not apply to.
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance too large for exhaustive search: {size} > {limit}")]
    GuardExceeded { size: usize, limit: usize },
    #[error("vertex set is not a feedback vertex set")]
    NotFeedbackSet,
    #[error("feedback vertex set is not proper: {0}")]
    NotProper(String),
    #[error("graph carries no vertex tags")]
    Untagged,
    #[error("not an agreement forest: {0}")]
    InvalidForest(String),
    /// A labelling of the input trees left an edge of the forest unused.
    #[error("forest is refined beyond both input trees: {0}")]
    OverRefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
