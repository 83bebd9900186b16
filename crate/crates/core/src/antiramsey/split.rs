use crate::graph::ColoredGraph;

/// Edges separated by whether their color is repeated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicitySplit {
    /// Edges whose color has multiplicity at least two.
    pub g1: Vec<usize>,
    /// Edges whose color occurs once.
    pub g2: Vec<usize>,
    /// `(color, multiplicity)` of the repeated colors, by decreasing
    /// multiplicity and then increasing color id.
    pub histogram: Vec<(usize, usize)>,
}

impl MultiplicitySplit {
    /// Number of repeated colors.
    pub fn s(&self) -> usize {
        self.histogram.len()
    }

    /// `Σ (m_i - 1)` over the repeated colors.
    pub fn excess(&self) -> usize {
        self.histogram.iter().map(|&(_, m)| m - 1).sum()
    }
}

pub fn split_by_multiplicity(g: &ColoredGraph) -> MultiplicitySplit {
    let mult = g.color_multiplicities();
    let (g1, g2) = (0..g.edge_count()).partition(|&i| mult[g.color(i)] >= 2);
    let mut histogram: Vec<(usize, usize)> = mult
        .iter()
        .copied()
        .enumerate()
        .filter(|&(_, m)| m >= 2)
        .collect();
    histogram.sort_by_key(|&(c, m)| (std::cmp::Reverse(m), c));
    MultiplicitySplit { g1, g2, histogram }
}
