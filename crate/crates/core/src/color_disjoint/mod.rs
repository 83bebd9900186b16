//! Color-disjoint rainbow spanning trees: the deletion process, the preorder
//! on forest families it induces, and a hill-climb that ends in either `t`
//! trees or a violating partition.

mod engine;
mod trace;

pub use engine::Move;
pub(crate) use engine::{Climb, Engine};
pub use trace::{DeletionRound, DeletionTrace, FamilyOrder};

use crate::certificate::{Certificate, PartitionSource, Solution, SolveStats};
use crate::error::{Error, Result};
use crate::graph::{validate_family, ColoredGraph, Disjointness, Forest, ForestFamily, VertexPartition};
use crate::partition::{deficiency_cd, find_violating_partition, Condition, SearchOptions};

/// Runs the deletion loop on `fam`. With `restrict`, only those edges count
/// as crossing and only those are deleted.
pub fn deletion_process(
    g: &ColoredGraph,
    fam: &ForestFamily,
    restrict: Option<&[usize]>,
) -> Result<DeletionTrace> {
    validate_family(g, fam).map_err(Error::InvalidFamily)?;
    if let Some(r) = restrict {
        for &i in r {
            g.check_edge(i)?;
        }
    }
    Ok(Engine::new(g, restrict).trace(&fam.forests))
}

pub fn compare_families(g: &ColoredGraph, a: &ForestFamily, b: &ForestFamily) -> Result<FamilyOrder> {
    let ta = deletion_process(g, a, None)?;
    let tb = deletion_process(g, b, None)?;
    Ok(ta.compare(&tb))
}

/// The first improving move on `fam` together with the family it produces.
pub fn improving_move(g: &ColoredGraph, fam: &ForestFamily) -> Result<Option<(ForestFamily, Move)>> {
    validate_family(g, fam).map_err(Error::InvalidFamily)?;
    let engine = Engine::new(g, None);
    let trace = engine.trace(&fam.forests);
    let mut rejected = 0;
    Ok(engine
        .improve(&fam.forests, &trace, &mut rejected)
        .map(|(forests, mv, _)| (ForestFamily::new(forests, fam.mode), mv)))
}

/// A strictly larger family reached by one growth or exchange move, if any.
pub fn exchange_augment(g: &ColoredGraph, fam: &ForestFamily) -> Result<Option<ForestFamily>> {
    Ok(improving_move(g, fam)?.map(|(f, _)| f))
}

/// Whether every color crossing a snapshot either crossed the previous
/// snapshot or still lies in some forest. Local maxima satisfy this.
pub fn containment_holds(g: &ColoredGraph, trace: &DeletionTrace) -> bool {
    let all: Vec<usize> = (0..g.edge_count()).collect();
    containment_over(g, trace, &all)
}

pub(crate) fn containment_over(g: &ColoredGraph, trace: &DeletionTrace, scope: &[usize]) -> bool {
    let crossing = |fs: &[Forest]| {
        let mut colors = crate::graph::ColorSet::with_capacity(g.color_count());
        for f in fs {
            let p = f.components(g);
            for &i in scope {
                let e = g.edge(i);
                if p.separates(e.u, e.v) {
                    colors.insert(e.color);
                }
            }
        }
        colors
    };
    (1..=trace.round_count()).all(|i| {
        let cur = trace.snapshot(i);
        let mut allowed = crossing(trace.snapshot(i - 1));
        for f in cur {
            for &e in f.edges() {
                allowed.insert(g.color(e));
            }
        }
        crossing(cur).is_subset(&allowed)
    })
}

/// Meet of the component partitions of `forests`, each restricted to the
/// edges accepted by `keep`.
pub(crate) fn components_meet(
    g: &ColoredGraph,
    forests: &[Forest],
    keep: impl Fn(usize) -> bool,
) -> VertexPartition {
    let mut p = VertexPartition::whole(g.vertex_count());
    for f in forests {
        let kept = Forest::new(f.edges().iter().copied().filter(|&i| keep(i)).collect());
        p = p.meet(&kept.components(g)).expect("same vertex count");
    }
    p
}

pub(crate) fn stats_of(climb: &Climb) -> SolveStats {
    SolveStats {
        rounds: climb.trace.round_count(),
        moves: climb.moves,
        max_rounds: climb.max_rounds,
        rejected_exchanges: climb.rejected_exchanges,
        partitions_scanned: 0,
    }
}

/// Finds `t` pairwise color-disjoint rainbow spanning trees of `g`, or a
/// partition whose crossing edges carry fewer than `t(|P| - 1)` colors.
pub fn solve_color_disjoint(g: &ColoredGraph, t: usize) -> Result<Solution> {
    let engine = Engine::new(g, None);
    let climb = engine.climb(&vec![Forest::empty(); t]);
    let mut stats = stats_of(&climb);
    let fam = ForestFamily::new(climb.forests, Disjointness::ColorDisjoint);
    if validate_family(g, &fam).is_err() {
        return Err(Error::internal("hill-climb produced an invalid family", g));
    }
    let done = |certificate, source, stats| Solution {
        certificate,
        guarantee: Disjointness::ColorDisjoint,
        source,
        stats,
        trace: climb.trace.clone(),
    };
    if fam.all_spanning_trees(g) {
        return Ok(done(Certificate::Trees(fam), None, stats));
    }

    let meet = components_meet(g, &climb.trace.stabilized, |_| true);
    if meet.block_count() >= 2 {
        let d = deficiency_cd(g, &meet, t)?;
        if d.is_violation() {
            return Ok(done(Certificate::Violation(d), Some(PartitionSource::StabilizedMeet), stats));
        }
    }
    log::warn!("meet partition {meet} failed its check; scanning partitions");
    let outcome = find_violating_partition(g, t, &Condition::ColorDisjoint, SearchOptions::default())?;
    stats.partitions_scanned = outcome.partitions_scanned;
    match outcome.violation {
        Some(d) => Ok(done(Certificate::Violation(d), Some(PartitionSource::Search), stats)),
        None => Err(Error::internal("no trees and no violating partition", g)),
    }
}

/// For a simple complete graph: whether every color class has at most
/// `n / (2t)` edges, which guarantees `t` color-disjoint trees.
pub fn corollary_threshold_check(g: &ColoredGraph, t: usize) -> Result<bool> {
    if !g.is_complete_simple() {
        return Err(Error::NotComplete);
    }
    let max = g.color_multiplicities().into_iter().max().unwrap_or(0);
    Ok(2 * t * max <= g.vertex_count())
}
