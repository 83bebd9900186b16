//! Text formats: graph files, forest files, certificate documents and
//! reproduction dumps.

mod document;
mod dump;
mod graph_file;

pub use document::{CertificateDocument, DocumentStats, PartitionDocument, ResultKind, SplitPartitionDocument};
pub use dump::{dump_dir, write_dump, DUMP_DIR_VAR};
pub use graph_file::{parse_forests, parse_graph, serialize_forests, serialize_graph, LabeledGraph};

use thiserror::Error;

/// A parse failure, located by 1-based line number (0 for whole-input
/// problems).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `ecg <n> <m> <k>` header")]
    MissingHeader,
    #[error("malformed header `{0}`")]
    BadHeader(String),
    #[error("expected `<u> <v> <label>`, found `{0}`")]
    BadEdge(String),
    #[error("`{0}` is not a vertex index")]
    BadNumber(String),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("header announces {expected} edges, file has {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("header announces {expected} colors, file uses {found}")]
    ColorCount { expected: usize, found: usize },
    #[error("expected `forest <edge>...`, found `{0}`")]
    BadForest(String),
    #[error("edge {index} out of range for {edges} edges")]
    EdgeOutOfRange { index: usize, edges: usize },
    #[error("malformed certificate document: {0}")]
    Document(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

/// Content lines with their 1-based numbers; `#` starts a comment.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}
