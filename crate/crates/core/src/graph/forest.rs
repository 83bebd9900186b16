use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::fmt;

use super::{ColorSet, ColoredGraph, DisjointSets, VertexPartition};
use crate::error::{Error, Result};

/// A set of edges of a host graph, stored by edge index.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Forest {
    edges: Vec<usize>,
}

impl Forest {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        Forest { edges }
    }

    pub fn empty() -> Self {
        Forest::default()
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: usize) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    pub fn insert(&mut self, edge: usize) {
        if let Err(pos) = self.edges.binary_search(&edge) {
            self.edges.insert(pos, edge);
        }
    }

    pub fn remove(&mut self, edge: usize) -> bool {
        match self.edges.binary_search(&edge) {
            Ok(pos) => {
                self.edges.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn colors(&self, g: &ColoredGraph) -> ColorSet {
        g.colors_of(&self.edges)
    }

    pub fn is_acyclic(&self, g: &ColoredGraph) -> bool {
        let mut dsu = DisjointSets::new(g.vertex_count());
        self.edges.iter().all(|&i| {
            let e = g.edge(i);
            dsu.union(e.u, e.v)
        })
    }

    pub fn is_rainbow(&self, g: &ColoredGraph) -> bool {
        self.colors(g).len() == self.edges.len()
    }

    pub fn is_spanning_tree(&self, g: &ColoredGraph) -> bool {
        self.edges.len() + 1 == g.vertex_count().max(1) && self.is_acyclic(g)
    }

    /// Components as a partition. Assumes valid edge indices.
    pub fn components(&self, g: &ColoredGraph) -> VertexPartition {
        let mut dsu = DisjointSets::new(g.vertex_count());
        for &i in &self.edges {
            let e = g.edge(i);
            dsu.union(e.u, e.v);
        }
        let labels = dsu.labels();
        let blocks = dsu.set_count();
        VertexPartition::from_rgs_unchecked(labels, blocks)
    }
}

impl FromIterator<usize> for Forest {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Forest::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Disjointness {
    ColorDisjoint,
    EdgeDisjoint,
}

impl fmt::Display for Disjointness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Disjointness::ColorDisjoint => "color-disjoint",
            Disjointness::EdgeDisjoint => "edge-disjoint",
        })
    }
}

/// An ordered family of rainbow forests together with the disjointness it claims.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForestFamily {
    pub forests: Vec<Forest>,
    pub mode: Disjointness,
}

impl ForestFamily {
    pub fn new(forests: Vec<Forest>, mode: Disjointness) -> Self {
        ForestFamily { forests, mode }
    }

    pub fn empty(t: usize, mode: Disjointness) -> Self {
        ForestFamily {
            forests: vec![Forest::empty(); t],
            mode,
        }
    }

    pub fn len(&self) -> usize {
        self.forests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forests.is_empty()
    }

    pub fn total_edges(&self) -> usize {
        self.forests.iter().map(Forest::len).sum()
    }

    pub fn colors(&self, g: &ColoredGraph) -> ColorSet {
        let mut all = ColorSet::with_capacity(g.color_count());
        for f in &self.forests {
            all.union_with(&f.colors(g));
        }
        all
    }

    pub fn all_spanning_trees(&self, g: &ColoredGraph) -> bool {
        self.forests.iter().all(|f| f.is_spanning_tree(g))
    }

    pub fn is_valid(&self, g: &ColoredGraph) -> bool {
        validate_family(g, self).is_ok()
    }
}

/// Why a forest family fails validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyViolation {
    EdgeOutOfRange { forest: usize, edge: usize },
    Cyclic { forest: usize },
    NotRainbow { forest: usize, color: usize },
    SharedColor { first: usize, second: usize, color: usize },
    SharedEdge { first: usize, second: usize, edge: usize },
}

impl fmt::Display for FamilyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilyViolation::EdgeOutOfRange { forest, edge } => {
                write!(f, "forest {forest} references missing edge {edge}")
            }
            FamilyViolation::Cyclic { forest } => write!(f, "forest {forest} contains a cycle"),
            FamilyViolation::NotRainbow { forest, color } => {
                write!(f, "forest {forest} repeats color {color}")
            }
            FamilyViolation::SharedColor {
                first,
                second,
                color,
            } => write!(f, "forests {first} and {second} share color {color}"),
            FamilyViolation::SharedEdge {
                first,
                second,
                edge,
            } => write!(f, "forests {first} and {second} share edge {edge}"),
        }
    }
}

/// Checks that every forest is acyclic and rainbow and that the family has
/// the disjointness its mode claims.
pub fn validate_family(g: &ColoredGraph, fam: &ForestFamily) -> Result<(), FamilyViolation> {
    let mut color_owner = vec![usize::MAX; g.color_count()];
    let mut edge_owner = vec![usize::MAX; g.edge_count()];
    for (j, forest) in fam.forests.iter().enumerate() {
        let mut own_colors = ColorSet::with_capacity(g.color_count());
        for &i in forest.edges() {
            if i >= g.edge_count() {
                return Err(FamilyViolation::EdgeOutOfRange { forest: j, edge: i });
            }
            let c = g.color(i);
            if own_colors.contains(c) {
                return Err(FamilyViolation::NotRainbow { forest: j, color: c });
            }
            own_colors.insert(c);
            if edge_owner[i] != usize::MAX {
                return Err(FamilyViolation::SharedEdge {
                    first: edge_owner[i],
                    second: j,
                    edge: i,
                });
            }
            edge_owner[i] = j;
            if fam.mode == Disjointness::ColorDisjoint {
                if color_owner[c] != usize::MAX {
                    return Err(FamilyViolation::SharedColor {
                        first: color_owner[c],
                        second: j,
                        color: c,
                    });
                }
                color_owner[c] = j;
            }
        }
        if !forest.is_acyclic(g) {
            return Err(FamilyViolation::Cyclic { forest: j });
        }
    }
    Ok(())
}

/// Connected components of `forest` over all `n` vertices of `g`.
pub fn forest_components(g: &ColoredGraph, forest: &Forest) -> Result<VertexPartition> {
    for &i in forest.edges() {
        g.check_edge(i)?;
    }
    Ok(forest.components(g))
}

/// The unique path in `forest` between the endpoints of edge `e`, as edge
/// indices ordered from `e.u` to `e.v`.
pub fn fundamental_cycle(g: &ColoredGraph, forest: &Forest, e: usize) -> Result<Vec<usize>> {
    let target = *g.check_edge(e)?;
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &i in forest.edges() {
        let edge = g.check_edge(i)?;
        adj[edge.u].push(i);
        adj[edge.v].push(i);
    }
    let mut via = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([target.u]);
    seen[target.u] = true;
    while let Some(x) = queue.pop_front() {
        if x == target.v {
            break;
        }
        for &i in &adj[x] {
            let y = g.edge(i).other(x);
            if !seen[y] {
                seen[y] = true;
                via[y] = i;
                queue.push_back(y);
            }
        }
    }
    if !seen[target.v] {
        return Err(Error::NoCycle {
            u: target.u,
            v: target.v,
        });
    }
    let mut path = Vec::new();
    let mut x = target.v;
    while x != target.u {
        let i = via[x];
        path.push(i);
        x = g.edge(i).other(x);
    }
    path.reverse();
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> ColoredGraph {
        ColoredGraph::rainbow_complete(n)
    }

    /// Index of edge (u, v) in the lexicographic `K_n` order.
    fn idx(n: usize, u: usize, v: usize) -> usize {
        let (u, v) = (u.min(v), u.max(v));
        u * n - u * (u + 1) / 2 + (v - u - 1)
    }

    #[test]
    fn component_examples() {
        let g = k(4);
        let empty = forest_components(&g, &Forest::empty()).unwrap();
        assert_eq!(empty.block_count(), 4);
        let star = Forest::new(vec![idx(4, 0, 1), idx(4, 0, 2), idx(4, 0, 3)]);
        assert_eq!(forest_components(&g, &star).unwrap().block_count(), 1);
        let one = Forest::new(vec![idx(4, 0, 1)]);
        let p = forest_components(&g, &one).unwrap();
        assert_eq!(p.assignment(), &[0, 0, 1, 2]);
        assert!(matches!(
            forest_components(&g, &Forest::new(vec![17])),
            Err(Error::EdgeOutOfRange { index: 17, .. })
        ));
    }

    #[test]
    fn fundamental_cycle_examples() {
        let g = k(4);
        let path = Forest::new(vec![idx(4, 0, 1), idx(4, 1, 2)]);
        assert_eq!(
            fundamental_cycle(&g, &path, idx(4, 0, 2)).unwrap(),
            vec![idx(4, 0, 1), idx(4, 1, 2)]
        );
        let star = Forest::new(vec![idx(4, 0, 1), idx(4, 0, 2), idx(4, 0, 3)]);
        let mut cyc = fundamental_cycle(&g, &star, idx(4, 1, 2)).unwrap();
        cyc.sort();
        assert_eq!(cyc, vec![idx(4, 0, 1), idx(4, 0, 2)]);
        let lone = Forest::new(vec![idx(4, 0, 1)]);
        assert!(matches!(
            fundamental_cycle(&g, &lone, idx(4, 2, 3)),
            Err(Error::NoCycle { .. })
        ));
    }

    #[test]
    fn validation_examples() {
        // two vertex-disjoint edges of colors 0 and 1
        let g = ColoredGraph::from_triples(4, &[(0, 1, 0), (2, 3, 1), (1, 2, 0)]).unwrap();
        let ok = ForestFamily::new(
            vec![Forest::new(vec![0]), Forest::new(vec![1])],
            Disjointness::ColorDisjoint,
        );
        assert!(ok.is_valid(&g));
        let shared = ForestFamily::new(
            vec![Forest::new(vec![0]), Forest::new(vec![2])],
            Disjointness::ColorDisjoint,
        );
        assert_eq!(
            validate_family(&g, &shared),
            Err(FamilyViolation::SharedColor {
                first: 0,
                second: 1,
                color: 0
            })
        );
        let shared_ok = ForestFamily {
            mode: Disjointness::EdgeDisjoint,
            ..shared
        };
        assert!(shared_ok.is_valid(&g));
        let not_rainbow = ForestFamily::new(vec![Forest::new(vec![0, 2])], Disjointness::EdgeDisjoint);
        assert_eq!(
            validate_family(&g, &not_rainbow),
            Err(FamilyViolation::NotRainbow { forest: 0, color: 0 })
        );
    }

    #[test]
    fn rainbow_k4_splits_into_two_paths() {
        // 0-1-2-3 and 2-0-3-1 (the complement): found by the exhaustive search
        // in the antiramsey tests, checked here explicitly.
        let g = k(4);
        let a = Forest::new(vec![idx(4, 0, 1), idx(4, 1, 2), idx(4, 2, 3)]);
        let b = Forest::new(vec![idx(4, 0, 2), idx(4, 0, 3), idx(4, 1, 3)]);
        let fam = ForestFamily::new(vec![a, b], Disjointness::EdgeDisjoint);
        assert!(fam.is_valid(&g));
        assert!(fam.all_spanning_trees(&g));
        let cyclic = ForestFamily::new(
            vec![Forest::new(vec![idx(4, 0, 1), idx(4, 1, 2), idx(4, 0, 2)])],
            Disjointness::EdgeDisjoint,
        );
        assert_eq!(validate_family(&g, &cyclic), Err(FamilyViolation::Cyclic { forest: 0 }));
    }

    /// All subsets of K_4's edges that are forests.
    fn forests_of_k4() -> Vec<Forest> {
        let g = k(4);
        (0u32..64)
            .map(|mask| Forest::new((0..6).filter(|b| mask >> b & 1 == 1).collect()))
            .filter(|f| f.is_acyclic(&g))
            .collect()
    }

    #[test]
    fn each_forest_edge_merges_two_blocks() {
        let g = k(4);
        for f in forests_of_k4() {
            let p = f.components(&g);
            assert_eq!(p.block_count(), 4 - f.len());
            if f.len() == 3 {
                assert_eq!(p.block_count(), 1);
            }
        }
    }

    /// Cycle through e in F + e found by brute force: the unique minimal edge
    /// subset of F whose union with e has every vertex of even degree.
    fn brute_cycle(g: &ColoredGraph, f: &Forest, e: usize) -> Option<Vec<usize>> {
        let edges = f.edges();
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u32..(1 << edges.len()) {
            let sub: Vec<usize> = (0..edges.len()).filter(|b| mask >> b & 1 == 1).map(|b| edges[b]).collect();
            let mut deg = vec![0; g.vertex_count()];
            for &i in sub.iter().chain(std::iter::once(&e)) {
                deg[g.edge(i).u] += 1;
                deg[g.edge(i).v] += 1;
            }
            if deg.iter().all(|d| d % 2 == 0) && best.as_ref().map_or(true, |b| sub.len() < b.len()) {
                best = Some(sub);
            }
        }
        best
    }

    #[test]
    fn fundamental_cycle_matches_brute_force_on_k5() {
        let g = k(5);
        let m = g.edge_count();
        for mask in 0u32..(1 << m) {
            let f = Forest::new((0..m).filter(|b| mask >> b & 1 == 1).collect());
            if !f.is_acyclic(&g) {
                continue;
            }
            let comps = f.components(&g);
            for e in 0..m {
                if f.contains(e) {
                    continue;
                }
                let ed = g.edge(e);
                let got = fundamental_cycle(&g, &f, e);
                if comps.separates(ed.u, ed.v) {
                    assert!(got.is_err());
                    continue;
                }
                let mut path = got.unwrap();
                // consecutive edges chain from e.u to e.v
                let mut at = ed.u;
                for &i in &path {
                    assert!(g.edge(i).touches(at));
                    at = g.edge(i).other(at);
                }
                assert_eq!(at, ed.v);
                path.sort();
                assert_eq!(Some(path), brute_cycle(&g, &f, e));
            }
        }
    }
}
