use std::cmp::Ordering;

use crate::graph::{ColorSet, ColoredGraph, Forest};

/// One pass of the deletion loop: the colors it processed and the forests
/// as they stood before the pass deleted anything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionRound {
    pub colors: ColorSet,
    pub forests: Vec<Forest>,
}

/// The full run of the deletion loop on a family.
///
/// `rounds[i].forests` is the family after `i` passes and `rounds[i].colors`
/// the set removed by pass `i`. `stabilized` is the family once no new
/// crossing color appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeletionTrace {
    pub rounds: Vec<DeletionRound>,
    pub stabilized: Vec<Forest>,
}

/// Outcome of comparing two families under the preorder induced by their
/// deletion traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyOrder {
    Less,
    EqualPrefix,
    Greater,
}

impl DeletionTrace {
    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    /// The family after `i` passes; past the last pass this is `stabilized`.
    pub fn snapshot(&self, i: usize) -> &[Forest] {
        self.rounds
            .get(i)
            .map_or(&self.stabilized[..], |r| &r.forests[..])
    }

    /// Total forest size after each pass, `0..=round_count()`.
    pub fn sizes(&self) -> Vec<usize> {
        (0..=self.rounds.len())
            .map(|i| self.snapshot(i).iter().map(Forest::len).sum())
            .collect()
    }

    /// Union of the colors processed by passes `0..i`.
    pub fn processed_before(&self, i: usize) -> ColorSet {
        let mut all = ColorSet::default();
        for r in &self.rounds[..i.min(self.rounds.len())] {
            all.union_with(&r.colors);
        }
        all
    }

    /// Lexicographic comparison of the size sequences, each extended by its
    /// final value.
    pub fn compare(&self, other: &DeletionTrace) -> FamilyOrder {
        let (a, b) = (self.sizes(), other.sizes());
        let len = a.len().max(b.len());
        let at = |s: &[usize], i: usize| s[i.min(s.len() - 1)];
        for i in 0..len {
            match at(&a, i).cmp(&at(&b, i)) {
                Ordering::Less => return FamilyOrder::Less,
                Ordering::Greater => return FamilyOrder::Greater,
                Ordering::Equal => {}
            }
        }
        FamilyOrder::EqualPrefix
    }

    /// Whether every pass raised the total component count by exactly the
    /// number of colors it processed.
    pub fn bookkeeping_holds(&self, g: &ColoredGraph) -> bool {
        let blocks = |fs: &[Forest]| -> usize {
            fs.iter().map(|f| f.components(g).block_count()).sum()
        };
        (0..self.rounds.len()).all(|i| {
            blocks(self.snapshot(i + 1)) == blocks(self.snapshot(i)) + self.rounds[i].colors.len()
        })
    }
}
