use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A partition of `0..n` stored as a restricted-growth string: vertex 0 is in
/// block 0 and every vertex is in an existing block or the next new one.
/// Two partitions are equal as set partitions iff their assignments match.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexPartition {
    assignment: Vec<usize>,
    block_count: usize,
}

impl VertexPartition {
    /// Normalizes arbitrary block labels into restricted-growth form.
    pub fn from_labels<T: std::hash::Hash + Eq>(labels: &[T]) -> Self {
        let mut ids = HashMap::new();
        let assignment = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect();
        VertexPartition {
            assignment,
            block_count: ids.len(),
        }
    }

    /// Accepts an assignment only if it is already in restricted-growth form.
    pub fn from_rgs(assignment: Vec<usize>) -> Option<Self> {
        let mut blocks = 0;
        for &a in &assignment {
            if a > blocks {
                return None;
            }
            if a == blocks {
                blocks += 1;
            }
        }
        Some(VertexPartition {
            assignment,
            block_count: blocks,
        })
    }

    pub(crate) fn from_rgs_unchecked(assignment: Vec<usize>, block_count: usize) -> Self {
        debug_assert_eq!(Self::from_rgs(assignment.clone()).map(|p| p.block_count), Some(block_count));
        VertexPartition {
            assignment,
            block_count,
        }
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            assignment: (0..n).collect(),
            block_count: n,
        }
    }

    pub fn whole(n: usize) -> Self {
        VertexPartition {
            assignment: vec![0; n],
            block_count: usize::from(n > 0),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn separates(&self, u: usize, v: usize) -> bool {
        self.assignment[u] != self.assignment[v]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (v, &b) in self.assignment.iter().enumerate() {
            blocks[b].push(v);
        }
        blocks
    }

    pub fn meet(&self, other: &VertexPartition) -> Result<VertexPartition> {
        meet_partitions(self, other)
    }
}

/// The common refinement: blocks are the nonempty pairwise intersections.
pub fn meet_partitions(a: &VertexPartition, b: &VertexPartition) -> Result<VertexPartition> {
    if a.vertex_count() != b.vertex_count() {
        return Err(Error::SizeMismatch {
            left: a.vertex_count(),
            right: b.vertex_count(),
        });
    }
    let pairs: Vec<(usize, usize)> = a
        .assignment
        .iter()
        .zip(&b.assignment)
        .map(|(&x, &y)| (x, y))
        .collect();
    Ok(VertexPartition::from_labels(&pairs))
}

impl fmt::Debug for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", blocks.join(" | "))
    }
}
