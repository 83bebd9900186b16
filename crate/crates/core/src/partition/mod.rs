//! Vertex-partition enumeration, crossing edges and colors, and the search
//! for partitions violating the tree-packing conditions.

mod search;
mod stream;

pub use search::{find_violating_partition, Condition, SearchOptions, SearchOutcome};
pub use stream::{bell_number, PartitionStream};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::restricted_graph;
use crate::graph::{validate_family, ColorSet, ColoredGraph, ForestFamily, VertexPartition};

/// The edges among `subgraph` whose endpoints lie in different blocks of `p`.
pub fn crossing_edges<'a>(
    g: &ColoredGraph,
    p: &VertexPartition,
    subgraph: impl IntoIterator<Item = &'a usize>,
) -> Vec<usize> {
    subgraph
        .into_iter()
        .copied()
        .filter(|&i| {
            let e = g.edge(i);
            p.separates(e.u, e.v)
        })
        .collect()
}

/// Colors of [`crossing_edges`].
pub fn crossing_colors<'a>(
    g: &ColoredGraph,
    p: &VertexPartition,
    subgraph: impl IntoIterator<Item = &'a usize>,
) -> ColorSet {
    g.colors_of(&crossing_edges(g, p, subgraph))
}

/// How far a partition falls short: `value = required - achieved`, where
/// `required = t(|P| - 1)`. A positive value certifies that no solution exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deficiency {
    pub partition: VertexPartition,
    pub required: usize,
    pub achieved: usize,
    pub value: i64,
}

impl Deficiency {
    fn new(partition: VertexPartition, t: usize, achieved: usize) -> Self {
        let required = t * (partition.block_count() - 1);
        Deficiency {
            partition,
            required,
            achieved,
            value: required as i64 - achieved as i64,
        }
    }

    pub fn is_violation(&self) -> bool {
        self.value >= 1
    }
}

/// Score of `p` for `t` color-disjoint rainbow spanning trees: the number of
/// distinct colors on all crossing edges.
pub fn deficiency_cd(g: &ColoredGraph, p: &VertexPartition, t: usize) -> Result<Deficiency> {
    check_partition(g, p)?;
    let all: Vec<usize> = (0..g.edge_count()).collect();
    let achieved = crossing_colors(g, p, &all).len();
    Ok(Deficiency::new(p.clone(), t, achieved))
}

/// Score of `p` for extending `fam` to `t` trees: distinct crossing colors in
/// the restricted graph plus the number of crossing forest edges.
pub fn deficiency_ext(
    g: &ColoredGraph,
    fam: &ForestFamily,
    p: &VertexPartition,
    t: usize,
) -> Result<Deficiency> {
    check_partition(g, p)?;
    if fam.len() != t {
        return Err(Error::ForestCountMismatch {
            expected: t,
            found: fam.len(),
        });
    }
    let mut edge_disjoint = fam.clone();
    edge_disjoint.mode = crate::graph::Disjointness::EdgeDisjoint;
    validate_family(g, &edge_disjoint).map_err(Error::InvalidFamily)?;
    let restricted = restricted_graph(g, fam)?;
    let colors = crossing_colors(g, p, restricted.surviving()).len();
    let forest_edges: usize = fam
        .forests
        .iter()
        .map(|f| crossing_edges(g, p, f.edges()).len())
        .sum();
    Ok(Deficiency::new(p.clone(), t, colors + forest_edges))
}

/// One partition per forest, none crossed by its own forest. Tree `i` needs
/// `|P_i| - 1` added edges across `P_i`, all in distinct colors of the
/// restricted graph, so `required = Σ(|P_i| - 1)` and `achieved` counts the
/// restricted colors crossing some `P_i`. A positive value certifies that no
/// extension exists, and some choice of partitions always does when none
/// exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDeficiency {
    pub partitions: Vec<VertexPartition>,
    pub required: usize,
    pub achieved: usize,
    pub value: i64,
}

impl SplitDeficiency {
    pub fn is_violation(&self) -> bool {
        self.value >= 1
    }
}

pub fn deficiency_split(g: &ColoredGraph, fam: &ForestFamily, partitions: &[VertexPartition]) -> Result<SplitDeficiency> {
    if partitions.len() != fam.len() {
        return Err(Error::ForestCountMismatch {
            expected: fam.len(),
            found: partitions.len(),
        });
    }
    let restricted = restricted_graph(g, fam)?;
    let mut colors = ColorSet::with_capacity(g.color_count());
    let mut required = 0;
    for (i, (p, f)) in partitions.iter().zip(&fam.forests).enumerate() {
        if p.vertex_count() != g.vertex_count() {
            return Err(Error::SizeMismatch {
                left: p.vertex_count(),
                right: g.vertex_count(),
            });
        }
        if !crossing_edges(g, p, f.edges()).is_empty() {
            return Err(Error::Precondition(format!("forest {i} crosses its own partition")));
        }
        required += p.block_count() - 1;
        colors.union_with(&crossing_colors(g, p, restricted.surviving()));
    }
    let achieved = colors.len();
    Ok(SplitDeficiency {
        partitions: partitions.to_vec(),
        required,
        achieved,
        value: required as i64 - achieved as i64,
    })
}

fn check_partition(g: &ColoredGraph, p: &VertexPartition) -> Result<()> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::SizeMismatch {
            left: p.vertex_count(),
            right: g.vertex_count(),
        });
    }
    if p.block_count() < 2 {
        return Err(Error::TooFewBlocks(p.block_count()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Disjointness, Forest};

    fn all(g: &ColoredGraph) -> Vec<usize> {
        (0..g.edge_count()).collect()
    }

    fn k4_pairs() -> VertexPartition {
        VertexPartition::from_labels(&[0, 0, 1, 1])
    }

    #[test]
    fn crossing_examples() {
        let g = ColoredGraph::rainbow_complete(4);
        let whole = VertexPartition::whole(4);
        assert!(crossing_edges(&g, &whole, &all(&g)).is_empty());
        let single = VertexPartition::singletons(4);
        assert_eq!(crossing_edges(&g, &single, &all(&g)), all(&g));
        assert_eq!(crossing_edges(&g, &k4_pairs(), &all(&g)), vec![1, 2, 3, 4]);
        assert_eq!(crossing_colors(&g, &k4_pairs(), &all(&g)).len(), 4);

        let mono = ColoredGraph::complete(4, |_, _| 0).unwrap();
        assert_eq!(crossing_colors(&mono, &k4_pairs(), &all(&mono)).len(), 1);

        let h = ColoredGraph::from_triples(4, &[(0, 1, 0), (2, 3, 1), (0, 2, 2), (1, 3, 2)]).unwrap();
        let cols = crossing_colors(&h, &VertexPartition::singletons(4), &all(&h));
        assert_eq!(cols.iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn deficiency_cd_examples() {
        let k3 = ColoredGraph::rainbow_complete(3);
        let d = deficiency_cd(&k3, &VertexPartition::singletons(3), 2).unwrap();
        assert_eq!((d.required, d.achieved, d.value), (4, 3, 1));
        let k4 = ColoredGraph::rainbow_complete(4);
        let d = deficiency_cd(&k4, &VertexPartition::singletons(4), 2).unwrap();
        assert_eq!((d.required, d.achieved, d.value), (6, 6, 0));
        let mono = ColoredGraph::complete(5, |_, _| 0).unwrap();
        let d = deficiency_cd(&mono, &VertexPartition::singletons(5), 1).unwrap();
        assert_eq!((d.required, d.achieved, d.value), (4, 1, 3));
        assert!(matches!(
            deficiency_cd(&k4, &VertexPartition::whole(4), 1),
            Err(Error::TooFewBlocks(1))
        ));
    }

    #[test]
    fn deficiency_ext_examples() {
        let g = ColoredGraph::rainbow_complete(4);
        // empty forests: same as the color-disjoint score
        let empty = ForestFamily::empty(2, Disjointness::EdgeDisjoint);
        for p in PartitionStream::new(4).filter(|p| p.block_count() >= 2) {
            assert_eq!(
                deficiency_ext(&g, &empty, &p, 2).unwrap().achieved,
                deficiency_cd(&g, &p, 2).unwrap().achieved
            );
        }
        // F1 = {01}, F2 = {23}, P = {01|23}: the four crossing edges 02, 03, 12, 13
        // all survive in G' (only colors of 01 and 23 are removed), and neither
        // forest edge crosses, so achieved = 4 and required = 2.
        let fam = ForestFamily::new(
            vec![Forest::new(vec![0]), Forest::new(vec![5])],
            Disjointness::EdgeDisjoint,
        );
        let d = deficiency_ext(&g, &fam, &k4_pairs(), 2).unwrap();
        assert_eq!((d.required, d.achieved, d.value), (2, 4, -2));
    }

    #[test]
    fn spanning_trees_never_fall_short() {
        // two disjoint spanning paths of K_4 as the family
        let g = ColoredGraph::rainbow_complete(4);
        let fam = ForestFamily::new(
            vec![Forest::new(vec![0, 3, 5]), Forest::new(vec![1, 2, 4])],
            Disjointness::EdgeDisjoint,
        );
        assert!(fam.is_valid(&g) && fam.all_spanning_trees(&g));
        for p in PartitionStream::new(4).filter(|p| p.block_count() >= 2) {
            assert!(deficiency_ext(&g, &fam, &p, 2).unwrap().value <= 0);
        }
    }
}
