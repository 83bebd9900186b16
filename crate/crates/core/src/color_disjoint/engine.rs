use crate::graph::{fundamental_cycle, ColorSet, ColoredGraph, DisjointSets, Forest, VertexPartition};

use super::trace::{DeletionRound, DeletionTrace, FamilyOrder};

/// An improving move found by [`Engine::improve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// A fresh-colored edge joined two components of a forest.
    Grow { forest: usize, added: usize },
    /// `added` replaced `removed` in `forest`, raising the size after `round` passes.
    Exchange {
        round: usize,
        forest: usize,
        added: usize,
        removed: usize,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct Climb {
    pub forests: Vec<Forest>,
    pub trace: DeletionTrace,
    pub moves: usize,
    pub max_rounds: usize,
    pub rejected_exchanges: usize,
}

/// The deletion process and hill-climb over one host graph. Only edges in
/// the scope are counted as crossing, deleted, or added by moves; edges
/// outside it (the fixed forests of an extension) stay put.
pub(crate) struct Engine<'g> {
    g: &'g ColoredGraph,
    in_scope: Vec<bool>,
    scope: Vec<usize>,
    by_color: Vec<Vec<usize>>,
}

impl<'g> Engine<'g> {
    pub fn new(g: &'g ColoredGraph, scope: Option<&[usize]>) -> Self {
        let mut in_scope = vec![scope.is_none(); g.edge_count()];
        if let Some(s) = scope {
            for &i in s {
                in_scope[i] = true;
            }
        }
        let scope: Vec<usize> = (0..g.edge_count()).filter(|&i| in_scope[i]).collect();
        let mut by_color = vec![Vec::new(); g.color_count()];
        for &i in &scope {
            by_color[g.color(i)].push(i);
        }
        Engine {
            g,
            in_scope,
            scope,
            by_color,
        }
    }

    fn crossing_union(&self, forests: &[Forest]) -> ColorSet {
        let mut colors = ColorSet::with_capacity(self.g.color_count());
        for f in forests {
            let p = f.components(self.g);
            for &i in &self.scope {
                let e = self.g.edge(i);
                if p.separates(e.u, e.v) {
                    colors.insert(e.color);
                }
            }
        }
        colors
    }

    /// Colors carried by in-scope forest edges.
    fn present(&self, forests: &[Forest]) -> ColorSet {
        let mut colors = ColorSet::with_capacity(self.g.color_count());
        for f in forests {
            for &i in f.edges() {
                if self.in_scope[i] {
                    colors.insert(self.g.color(i));
                }
            }
        }
        colors
    }

    pub fn trace(&self, forests: &[Forest]) -> DeletionTrace {
        let mut current = forests.to_vec();
        let mut processed = ColorSet::with_capacity(self.g.color_count());
        let mut rounds = Vec::new();
        loop {
            let fresh = self.crossing_union(&current).difference(&processed);
            if fresh.is_empty() {
                break;
            }
            rounds.push(DeletionRound {
                colors: fresh.clone(),
                forests: current.clone(),
            });
            for f in current.iter_mut() {
                let doomed: Vec<usize> = f
                    .edges()
                    .iter()
                    .copied()
                    .filter(|&i| self.in_scope[i] && fresh.contains(self.g.color(i)))
                    .collect();
                for i in doomed {
                    f.remove(i);
                }
            }
            processed.union_with(&fresh);
        }
        DeletionTrace {
            rounds,
            stabilized: current,
        }
    }

    /// Greedy start: scan in-scope edges in order and give each to the first
    /// forest that stays acyclic, unless its color is already in use.
    pub fn greedy(&self, start: &[Forest]) -> Vec<Forest> {
        let mut forests = start.to_vec();
        let mut dsus: Vec<DisjointSets> = forests
            .iter()
            .map(|f| {
                let mut d = DisjointSets::new(self.g.vertex_count());
                for &i in f.edges() {
                    let e = self.g.edge(i);
                    d.union(e.u, e.v);
                }
                d
            })
            .collect();
        let mut used = self.present(&forests);
        for &i in &self.scope {
            let e = *self.g.edge(i);
            if used.contains(e.color) || forests.iter().any(|f| f.contains(i)) {
                continue;
            }
            if let Some(s) = dsus.iter_mut().position(|d| !d.same(e.u, e.v)) {
                dsus[s].union(e.u, e.v);
                forests[s].insert(i);
                used.insert(e.color);
            }
        }
        forests
    }

    /// The first improving move in tie-break order (round, color, forest,
    /// added edge, removed edge), applied. Exchanges are re-checked against
    /// the preorder before being accepted; `rejected` counts the ones that
    /// failed that check.
    pub fn improve(
        &self,
        forests: &[Forest],
        trace: &DeletionTrace,
        rejected: &mut usize,
    ) -> Option<(Vec<Forest>, Move, DeletionTrace)> {
        let present = self.present(forests);
        let fresh_colors: Vec<usize> = (0..self.g.color_count())
            .filter(|&c| !present.contains(c) && !self.by_color[c].is_empty())
            .collect();

        let comps0: Vec<VertexPartition> = forests.iter().map(|f| f.components(self.g)).collect();
        for &x in &fresh_colors {
            for (s, p) in comps0.iter().enumerate() {
                for &e in &self.by_color[x] {
                    let edge = self.g.edge(e);
                    if p.separates(edge.u, edge.v) {
                        let mut next = forests.to_vec();
                        next[s].insert(e);
                        let t = self.trace(&next);
                        return Some((next, Move::Grow { forest: s, added: e }, t));
                    }
                }
            }
        }

        for i in 1..=trace.round_count() {
            let prev = trace.snapshot(i - 1);
            let cur = trace.snapshot(i);
            let before = trace.processed_before(i);
            let comps: Vec<VertexPartition> = cur.iter().map(|f| f.components(self.g)).collect();
            for &x in fresh_colors.iter().filter(|&&x| !before.contains(x)) {
                for (s, p) in comps.iter().enumerate() {
                    for &e in &self.by_color[x] {
                        let edge = self.g.edge(e);
                        if !p.separates(edge.u, edge.v) {
                            continue;
                        }
                        // x was not crossing one pass earlier, so e closes a
                        // cycle in that snapshot of forest s.
                        let Ok(mut path) = fundamental_cycle(self.g, &prev[s], e) else {
                            continue;
                        };
                        path.sort_unstable();
                        for removed in path {
                            let r = self.g.edge(removed);
                            if !p.separates(r.u, r.v) {
                                continue;
                            }
                            let mut next = forests.to_vec();
                            next[s].remove(removed);
                            next[s].insert(e);
                            let t = self.trace(&next);
                            if t.compare(trace) == FamilyOrder::Greater {
                                let mv = Move::Exchange {
                                    round: i,
                                    forest: s,
                                    added: e,
                                    removed,
                                };
                                return Some((next, mv, t));
                            }
                            *rejected += 1;
                        }
                    }
                }
            }
        }
        None
    }

    /// Greedy start followed by improving moves until none applies.
    pub fn climb(&self, start: &[Forest]) -> Climb {
        let mut forests = self.greedy(start);
        let mut trace = self.trace(&forests);
        let mut moves = 0;
        let mut max_rounds = trace.round_count();
        let mut rejected_exchanges = 0;
        while let Some((next, mv, t)) = self.improve(&forests, &trace, &mut rejected_exchanges) {
            log::trace!("move {moves}: {mv:?}");
            forests = next;
            trace = t;
            moves += 1;
            max_rounds = max_rounds.max(trace.round_count());
        }
        Climb {
            forests,
            trace,
            moves,
            max_rounds,
            rejected_exchanges,
        }
    }
}
