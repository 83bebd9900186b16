//! Edge-colored multigraphs and the elementary structures built on them.
//!
//! Vertices are `0..n` and colors are dense ids `0..k`. Edges are addressed by
//! their index in the edge sequence, which keeps parallel edges apart.

mod dsu;
mod forest;
mod partition;
mod sets;

pub use dsu::DisjointSets;
pub use forest::{
    forest_components, fundamental_cycle, validate_family, Disjointness, FamilyViolation, Forest,
    ForestFamily,
};
pub use partition::{meet_partitions, VertexPartition};
pub use sets::ColorSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize, color: usize) -> Self {
        Edge { u, v, color }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`.
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// An edge-colored multigraph. Loops are rejected, parallel edges (also of
/// equal color) are kept, and every color id below `color_count` is used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    n: usize,
    edges: Vec<Edge>,
    colors: usize,
}

impl ColoredGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut colors = 0;
        for (index, e) in edges.iter().enumerate() {
            for vertex in [e.u, e.v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { index, vertex, n });
                }
            }
            if e.u == e.v {
                return Err(Error::Loop { index, vertex: e.u });
            }
            colors = colors.max(e.color + 1);
        }
        let mut seen = vec![false; colors];
        for e in &edges {
            seen[e.color] = true;
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(Error::SparsePalette(c));
        }
        Ok(ColoredGraph { n, edges, colors })
    }

    pub fn from_triples(n: usize, triples: &[(usize, usize, usize)]) -> Result<Self> {
        Self::new(n, triples.iter().map(|&(u, v, c)| Edge::new(u, v, c)).collect())
    }

    /// Builds a graph with arbitrary color ids, renumbering them densely in order
    /// of first appearance. Returns the graph and, per new id, the old id.
    pub fn with_compacted_colors(n: usize, edges: Vec<Edge>) -> Result<(Self, Vec<usize>)> {
        let mut map = std::collections::HashMap::new();
        let mut old_ids = Vec::new();
        let edges = edges
            .into_iter()
            .map(|e| {
                let id = *map.entry(e.color).or_insert_with(|| {
                    old_ids.push(e.color);
                    old_ids.len() - 1
                });
                Edge { color: id, ..e }
            })
            .collect();
        Ok((Self::new(n, edges)?, old_ids))
    }

    /// The complete graph `K_n` with edges in lexicographic order `(0,1), (0,2), ...`,
    /// colored by `color_of(u, v)`. Colors are compacted.
    pub fn complete(n: usize, mut color_of: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let edges = complete_pairs(n)
            .map(|(u, v)| Edge::new(u, v, color_of(u, v)))
            .collect();
        Ok(Self::with_compacted_colors(n, edges)?.0)
    }

    /// Rainbow `K_n`: every edge its own color.
    pub fn rainbow_complete(n: usize) -> Self {
        let mut next = 0;
        Self::complete(n, |_, _| {
            next += 1;
            next - 1
        })
        .expect("rainbow complete graph is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn color_count(&self) -> usize {
        self.colors
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn color(&self, index: usize) -> usize {
        self.edges[index].color
    }

    pub fn check_edge(&self, index: usize) -> Result<&Edge> {
        self.edges.get(index).ok_or(Error::EdgeOutOfRange {
            index,
            edges: self.edges.len(),
        })
    }

    /// Edge indices grouped by color.
    pub fn edges_by_color(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.colors];
        for (i, e) in self.edges.iter().enumerate() {
            classes[e.color].push(i);
        }
        classes
    }

    /// Edge indices incident to each vertex.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push(i);
            inc[e.v].push(i);
        }
        inc
    }

    /// Number of edges per color; indexed by color id.
    pub fn color_multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.colors];
        for e in &self.edges {
            counts[e.color] += 1;
        }
        counts
    }

    pub fn colors_of<'a>(&self, edges: impl IntoIterator<Item = &'a usize>) -> ColorSet {
        let mut set = ColorSet::with_capacity(self.colors);
        for &i in edges {
            set.insert(self.edges[i].color);
        }
        set
    }

    /// True when every pair of distinct vertices is joined by exactly one edge.
    pub fn is_complete_simple(&self) -> bool {
        if self.edges.len() != self.n * self.n.saturating_sub(1) / 2 {
            return false;
        }
        let mut seen = vec![false; self.n * self.n];
        for e in &self.edges {
            let (a, b) = (e.u.min(e.v), e.u.max(e.v));
            if std::mem::replace(&mut seen[a * self.n + b], true) {
                return false;
            }
        }
        true
    }

    /// The spanning subgraph on the listed edges, with colors compacted.
    /// Edge `i` of the result is edge `keep[i]` of `self`.
    pub fn edge_subgraph(&self, keep: &[usize]) -> ColoredGraph {
        let edges = keep.iter().map(|&i| self.edges[i]).collect();
        Self::with_compacted_colors(self.n, edges)
            .expect("subgraph of a valid graph is valid")
            .0
    }

    /// Deletes the listed vertices (and every edge touching them), renumbering
    /// the remaining vertices in order and compacting colors. Returns the
    /// subgraph and, per subgraph edge, the original edge index.
    pub fn remove_vertices(&self, removed: &[usize]) -> (ColoredGraph, Vec<usize>) {
        self.remove_vertices_where(removed, |_| true)
    }

    /// Like [`remove_vertices`](Self::remove_vertices) but additionally keeps only
    /// the edges accepted by `keep`.
    pub fn remove_vertices_where(
        &self,
        removed: &[usize],
        mut keep: impl FnMut(&Edge) -> bool,
    ) -> (ColoredGraph, Vec<usize>) {
        let mut relabel = vec![usize::MAX; self.n];
        let mut next = 0;
        for (v, slot) in relabel.iter_mut().enumerate() {
            if !removed.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let mut origin = Vec::new();
        let mut edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if relabel[e.u] == usize::MAX || relabel[e.v] == usize::MAX || !keep(e) {
                continue;
            }
            origin.push(i);
            edges.push(Edge::new(relabel[e.u], relabel[e.v], e.color));
        }
        let (graph, _) =
            Self::with_compacted_colors(next, edges).expect("subgraph of a valid graph is valid");
        (graph, origin)
    }

    /// Same edges with new color ids; `recolor[c]` is the new id of color `c`.
    /// The new ids are compacted, so any map is accepted.
    pub fn recolored(&self, recolor: &[usize]) -> ColoredGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                color: recolor[e.color],
                ..*e
            })
            .collect();
        Self::with_compacted_colors(self.n, edges)
            .expect("recoloring keeps the graph valid")
            .0
    }
}

/// Vertex pairs of `K_n` in lexicographic order.
pub fn complete_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Free-function form of [`ColoredGraph::color_multiplicities`].
pub fn color_multiplicities(g: &ColoredGraph) -> Vec<usize> {
    g.color_multiplicities()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_sparse_palettes() {
        assert!(matches!(
            ColoredGraph::from_triples(3, &[(0, 1, 0), (2, 2, 1)]),
            Err(Error::Loop { index: 1, vertex: 2 })
        ));
        assert!(matches!(
            ColoredGraph::from_triples(3, &[(0, 1, 0), (1, 2, 2)]),
            Err(Error::SparsePalette(1))
        ));
        assert!(matches!(
            ColoredGraph::from_triples(2, &[(0, 5, 0)]),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn multiplicities_of_small_graphs() {
        let tri = ColoredGraph::from_triples(3, &[(0, 1, 0), (1, 2, 0), (0, 2, 1)]).unwrap();
        assert_eq!(color_multiplicities(&tri), vec![2, 1]);
        let k4 = ColoredGraph::rainbow_complete(4);
        assert_eq!(k4.color_multiplicities(), vec![1; 6]);
    }

    #[test]
    fn parallel_equal_colored_edges_are_kept() {
        let g = ColoredGraph::from_triples(2, &[(0, 1, 0), (0, 1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.color_multiplicities(), vec![2]);
        assert!(!g.is_complete_simple());
    }

    #[test]
    fn k8_with_nineteen_colors_has_excess_nine() {
        // 28 edges, 19 colors: the last ten edges share one color.
        let mut next = 0usize;
        let g = ColoredGraph::complete(8, |_, _| {
            next += 1;
            (next - 1).min(18)
        })
        .unwrap();
        let mult = g.color_multiplicities();
        assert_eq!(mult.iter().sum::<usize>(), 28);
        assert_eq!(g.color_count(), 19);
        let excess: usize = mult.iter().filter(|&&m| m > 1).map(|m| m - 1).sum();
        assert_eq!(excess, 9);
    }

    #[test]
    fn vertex_removal_relabels() {
        let g = ColoredGraph::rainbow_complete(4);
        let (h, origin) = g.remove_vertices(&[1]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        assert!(h.is_complete_simple());
        assert_eq!(origin, vec![1, 2, 5]);
    }
}
