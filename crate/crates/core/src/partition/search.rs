use rayon::prelude::*;

use super::Deficiency;
use crate::error::{Error, Result};
use crate::extension::restricted_graph;
use crate::graph::{validate_family, ColoredGraph, Disjointness, ForestFamily, VertexPartition};

/// Which tree-packing condition a partition is scored against.
#[derive(Debug, Clone, Copy)]
pub enum Condition<'a> {
    /// `t` color-disjoint rainbow spanning trees.
    ColorDisjoint,
    /// Color-disjoint extension of the given edge-disjoint forests.
    Extension(&'a ForestFamily),
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub prune: bool,
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            prune: true,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// First violating partition in restricted-growth order, if any.
    pub violation: Option<Deficiency>,
    pub partitions_scanned: u64,
}

#[derive(Debug, Clone, Copy)]
enum Role {
    Color(usize),
    Unit,
}

/// Incremental scorer over restricted-growth prefixes. Edges are attached to
/// their larger endpoint so each is decided once both ends are placed.
struct Scorer {
    n: usize,
    t: usize,
    colors: usize,
    back_edges: Vec<Vec<(usize, Role)>>,
}

struct State {
    assign: Vec<usize>,
    blocks: usize,
    color_hits: Vec<u32>,
    distinct: usize,
    units: usize,
    scanned: u64,
}

impl Scorer {
    fn new(g: &ColoredGraph, t: usize, condition: &Condition) -> Result<Self> {
        let mut back_edges = vec![Vec::new(); g.vertex_count()];
        let mut attach = |i: usize, role: Role| {
            let e = g.edge(i);
            let (lo, hi) = (e.u.min(e.v), e.u.max(e.v));
            back_edges[hi].push((lo, role));
        };
        match condition {
            Condition::ColorDisjoint => {
                for i in 0..g.edge_count() {
                    attach(i, Role::Color(g.color(i)));
                }
            }
            Condition::Extension(fam) => {
                if fam.len() != t {
                    return Err(Error::ForestCountMismatch {
                        expected: t,
                        found: fam.len(),
                    });
                }
                let mut ed = (*fam).clone();
                ed.mode = Disjointness::EdgeDisjoint;
                validate_family(g, &ed).map_err(Error::InvalidFamily)?;
                let restricted = restricted_graph(g, fam)?;
                for &i in restricted.surviving() {
                    attach(i, Role::Color(g.color(i)));
                }
                for f in &fam.forests {
                    for &i in f.edges() {
                        attach(i, Role::Unit);
                    }
                }
            }
        }
        Ok(Scorer {
            n: g.vertex_count(),
            t,
            colors: g.color_count(),
            back_edges,
        })
    }

    fn fresh_state(&self) -> State {
        State {
            assign: vec![0; self.n],
            blocks: 0,
            color_hits: vec![0; self.colors],
            distinct: 0,
            units: 0,
            scanned: 0,
        }
    }

    fn place(&self, s: &mut State, v: usize, block: usize) {
        s.assign[v] = block;
        if block == s.blocks {
            s.blocks += 1;
        }
        for &(w, role) in &self.back_edges[v] {
            if s.assign[w] != block {
                match role {
                    Role::Color(c) => {
                        s.color_hits[c] += 1;
                        if s.color_hits[c] == 1 {
                            s.distinct += 1;
                        }
                    }
                    Role::Unit => s.units += 1,
                }
            }
        }
    }

    fn unplace(&self, s: &mut State, v: usize, block: usize, opened: bool) {
        for &(w, role) in &self.back_edges[v] {
            if s.assign[w] != block {
                match role {
                    Role::Color(c) => {
                        s.color_hits[c] -= 1;
                        if s.color_hits[c] == 0 {
                            s.distinct -= 1;
                        }
                    }
                    Role::Unit => s.units -= 1,
                }
            }
        }
        if opened {
            s.blocks -= 1;
        }
    }

    /// Crossing edges only accumulate, so `achieved` is a lower bound for
    /// every completion, while the requirement is at most t(max blocks - 1).
    fn hopeless(&self, s: &State, depth: usize) -> bool {
        let max_blocks = s.blocks + (self.n - depth);
        max_blocks < 2 || s.distinct + s.units >= self.t * (max_blocks - 1)
    }

    /// Depth-first over placements of vertices `depth..n`; returns the first
    /// violating completion in lexicographic order.
    fn descend(&self, s: &mut State, depth: usize, prune: bool) -> Option<Deficiency> {
        let achieved = s.distinct + s.units;
        if depth == self.n {
            s.scanned += 1;
            if s.blocks >= 2 && self.t * (s.blocks - 1) > achieved {
                let p = VertexPartition::from_rgs_unchecked(s.assign.clone(), s.blocks);
                return Some(Deficiency::new(p, self.t, achieved));
            }
            return None;
        }
        if prune && self.hopeless(s, depth) {
            return None;
        }
        for block in 0..=s.blocks.min(self.n - 1) {
            let opened = block == s.blocks;
            self.place(s, depth, block);
            let found = self.descend(s, depth + 1, prune);
            self.unplace(s, depth, block, opened);
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Restricted-growth prefixes of length `len`, in lexicographic order.
fn prefixes(len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(cur: &mut Vec<usize>, blocks: usize, len: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for b in 0..=blocks {
            cur.push(b);
            rec(cur, blocks.max(b + 1), len, out);
            cur.pop();
        }
    }
    rec(&mut cur, 0, len, &mut out);
    out
}

/// Scans vertex partitions with at least two blocks for one violating the
/// chosen condition. The answer is the first violation in restricted-growth
/// lexicographic order regardless of pruning or thread count.
pub fn find_violating_partition(
    g: &ColoredGraph,
    t: usize,
    condition: &Condition,
    opts: SearchOptions,
) -> Result<SearchOutcome> {
    let scorer = Scorer::new(g, t, condition)?;
    if g.vertex_count() == 0 {
        return Ok(SearchOutcome {
            violation: None,
            partitions_scanned: 0,
        });
    }
    if opts.threads <= 1 || g.vertex_count() < 4 {
        let mut s = scorer.fresh_state();
        let violation = scorer.descend(&mut s, 0, opts.prune);
        return Ok(SearchOutcome {
            violation,
            partitions_scanned: s.scanned,
        });
    }

    let depth = g.vertex_count().min(5);
    let work = prefixes(depth);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let results: Vec<(Option<Deficiency>, u64)> = pool.install(|| {
        work.par_iter()
            .map(|prefix| {
                let mut s = scorer.fresh_state();
                for (v, &b) in prefix.iter().enumerate() {
                    if opts.prune && scorer.hopeless(&s, v) {
                        return (None, 0);
                    }
                    scorer.place(&mut s, v, b);
                }
                let found = scorer.descend(&mut s, depth, opts.prune);
                (found, s.scanned)
            })
            .collect()
    });
    // count what the sequential scan would have visited
    let stop = results.iter().position(|r| r.0.is_some()).map_or(results.len(), |i| i + 1);
    let partitions_scanned = results[..stop].iter().map(|r| r.1).sum();
    let violation = results.into_iter().find_map(|r| r.0);
    Ok(SearchOutcome {
        violation,
        partitions_scanned,
    })
}
