use thiserror::Error;

use crate::graph::{ColoredGraph, FamilyViolation};
use crate::io::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },

    #[error("edge {index} has endpoint {vertex}, but the graph has {n} vertices")]
    VertexOutOfRange { index: usize, vertex: usize, n: usize },

    #[error("color {0} labels no edge; color ids must be dense")]
    SparsePalette(usize),

    #[error("edge index {index} out of range for a graph with {edges} edges")]
    EdgeOutOfRange { index: usize, edges: usize },

    #[error("vertices {u} and {v} lie in different components of the forest")]
    NoCycle { u: usize, v: usize },

    #[error("partition sizes differ ({left} vs {right} vertices)")]
    SizeMismatch { left: usize, right: usize },

    #[error("partition has {0} block(s); at least two are required")]
    TooFewBlocks(usize),

    #[error("invalid forest family: {0}")]
    InvalidFamily(FamilyViolation),

    #[error("expected {expected} forests, found {found}")]
    ForestCountMismatch { expected: usize, found: usize },

    #[error("graph is not a simple complete graph")]
    NotComplete,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("no packing strategy named `{0}`")]
    UnknownStrategy(String),

    /// A step that the construction guarantees cannot fail did fail. The
    /// instance is kept so that it can be dumped for reproduction.
    #[error("internal failure in step `{step}`")]
    InternalFailure {
        step: String,
        instance: Box<ColoredGraph>,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn internal(step: impl Into<String>, instance: &ColoredGraph) -> Self {
        Error::InternalFailure {
            step: step.into(),
            instance: Box::new(instance.clone()),
        }
    }
}
