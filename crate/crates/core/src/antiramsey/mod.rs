//! Edge-disjoint rainbow spanning trees in colored complete graphs: the
//! anti-Ramsey number `r(n, t)`, constructions that find `t` trees whenever
//! more colors are used, and exhaustive oracles for small `n`.

mod exhaustive;
mod extremal;
mod lemma;
mod matching;
mod pipeline;
mod split;
mod strategy;

pub use exhaustive::{
    disjoint_choice, exhaustive_edge_disjoint_search, mask_to_forest, spanning_trees, Budget, EdgeMask, Packing,
};
pub use extremal::{extremal_coloring, random_coloring, verify_r_exhaustive, VerifyReport};
pub use lemma::{lemma1_forests, LeftoverReport};
pub use matching::{max_bipartite_matching, BipartiteGraph, Matching};
pub use pipeline::{
    base_case_n2t2, induction_step, n2t1_forests, pipeline, solver_n2t1, threshold, PipelineOutput, PipelineStep,
};
pub use split::{split_by_multiplicity, MultiplicitySplit};
pub use strategy::{solve_edge_disjoint_rst, PackingStrategy, StrategyRegistry};

use crate::error::{Error, Result};
use crate::graph::{ColorSet, ColoredGraph};

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The largest number of colors on `K_n` that can still avoid `t`
/// edge-disjoint rainbow spanning trees.
pub fn r_formula(n: usize, t: usize) -> Result<usize> {
    if t == 0 || n < 2 * t {
        return Err(Error::Precondition(format!(
            "K_{n} has too few edges for {t} spanning trees (need n >= 2t >= 2)"
        )));
    }
    Ok(match n - 2 * t {
        0 => choose2(n) - t,
        1 => choose2(n - 1),
        _ => choose2(n - 2) + t,
    })
}

/// Merges every color with id at least `k - 1` into one, leaving `k`
/// colors. Trees rainbow in the result are rainbow in `g`.
pub fn coarsen_to(g: &ColoredGraph, k: usize) -> ColoredGraph {
    let map: Vec<usize> = (0..g.color_count()).map(|c| c.min(k.saturating_sub(1))).collect();
    g.recolored(&map)
}

/// Colors all of whose edges touch `v`.
pub fn dominated_colors(g: &ColoredGraph, v: usize) -> ColorSet {
    let mut away = vec![false; g.color_count()];
    for e in g.edges() {
        if !e.touches(v) {
            away[e.color] = true;
        }
    }
    (0..g.color_count()).filter(|&c| !away[c]).collect()
}

/// Edges at `v` whose color lies in `colors`, by index.
pub fn gamma(g: &ColoredGraph, v: usize, colors: &ColorSet) -> Vec<usize> {
    (0..g.edge_count())
        .filter(|&i| {
            let e = g.edge(i);
            e.touches(v) && colors.contains(e.color)
        })
        .collect()
}
