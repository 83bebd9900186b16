use crate::color_disjoint::DeletionTrace;
use crate::graph::{Disjointness, ForestFamily};
use crate::partition::{Deficiency, SplitDeficiency};

/// A witness either way: trees that solve the instance, or a partition
/// proving no solution exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Trees(ForestFamily),
    Violation(Deficiency),
    /// Separate partitions per forest; only for extensions, when no single
    /// partition shows the shortfall.
    SplitViolation(SplitDeficiency),
}

impl Certificate {
    pub fn trees(&self) -> Option<&ForestFamily> {
        match self {
            Certificate::Trees(f) => Some(f),
            _ => None,
        }
    }

    pub fn violation(&self) -> Option<&Deficiency> {
        match self {
            Certificate::Violation(d) => Some(d),
            _ => None,
        }
    }
}

/// Where a violating partition came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionSource {
    /// Meet of the stabilized forests' components, ignoring frozen edges
    /// when extending.
    StabilizedMeet,
    /// Meet of the stabilized forests' components including frozen edges.
    FullMeet,
    /// The stabilized forests' own components, one partition per forest.
    StabilizedComponents,
    /// The constructive partition failed its check and an exhaustive scan
    /// found one instead.
    Search,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Deletion rounds in the final trace.
    pub rounds: usize,
    /// Improving moves accepted by the hill-climb.
    pub moves: usize,
    /// Most rounds seen in any trace along the climb.
    pub max_rounds: usize,
    /// Exchange candidates that failed the strict-increase check.
    pub rejected_exchanges: usize,
    pub partitions_scanned: u64,
}

/// Result of a constructive solve.
#[derive(Debug, Clone)]
pub struct Solution {
    pub certificate: Certificate,
    /// Color-disjoint when the output trees share no color at all.
    pub guarantee: Disjointness,
    pub source: Option<PartitionSource>,
    pub stats: SolveStats,
    /// Deletion trace of the final family.
    pub trace: DeletionTrace,
}
