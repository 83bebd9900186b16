use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::matching::{max_bipartite_matching, BipartiteGraph};
use super::split::split_by_multiplicity;
use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Disjointness, DisjointSets, Forest, ForestFamily};

/// The edges left over after extracting forests, with statistics computed
/// from the edge set itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeftoverReport {
    pub g0: Vec<usize>,
    pub max_degree: usize,
    pub edge_count: usize,
}

impl LeftoverReport {
    pub fn compute(g: &ColoredGraph, fam: &ForestFamily) -> Self {
        let g0: Vec<usize> = (0..g.edge_count())
            .filter(|&i| !fam.forests.iter().any(|f| f.contains(i)))
            .collect();
        let mut degree = vec![0; g.vertex_count()];
        for &i in &g0 {
            let e = g.edge(i);
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        LeftoverReport {
            max_degree: degree.into_iter().max().unwrap_or(0),
            edge_count: g0.len(),
            g0,
        }
    }
}

/// Edges of the shrinking graph, with per-vertex incidence kept current.
struct Remaining<'g> {
    g: &'g ColoredGraph,
    alive: Vec<bool>,
}

impl<'g> Remaining<'g> {
    fn new(g: &'g ColoredGraph) -> Self {
        Remaining {
            g,
            alive: vec![true; g.edge_count()],
        }
    }

    fn at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.g.edge_count()).filter(move |&i| self.alive[i] && self.g.edge(i).touches(v))
    }

    fn degree(&self, v: usize, filter: impl Fn(usize) -> bool) -> usize {
        self.at(v).filter(|&i| filter(i)).count()
    }

    /// Lowest vertex maximizing the filtered degree, if that degree is positive.
    fn busiest(&self, filter: impl Fn(usize) -> bool + Copy) -> Option<usize> {
        let (v, d) = (0..self.g.vertex_count())
            .map(|v| (v, self.degree(v, filter)))
            .fold((0, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        (d > 0).then_some(v)
    }
}

fn check_hypotheses(g1: &ColoredGraph, t: usize) -> Result<()> {
    let fail = |what: String| Err(Error::Precondition(what));
    if t < 3 {
        return fail(format!("forest lemma needs t >= 3, got {t}"));
    }
    if g1.vertex_count() != 2 * t + 2 {
        return fail(format!("forest lemma needs n = 2t+2 = {}, got {}", 2 * t + 2, g1.vertex_count()));
    }
    let split = split_by_multiplicity(g1);
    if !split.g2.is_empty() {
        return fail("forest lemma needs every color multiplicity >= 2".into());
    }
    if split.excess() != 3 * t {
        return fail(format!("forest lemma needs excess 3t = {}, got {}", 3 * t, split.excess()));
    }
    Ok(())
}

/// Extracts `t` edge-disjoint rainbow forests from a graph on `2t + 2`
/// vertices whose colors all repeat with total excess `3t`, leaving at most
/// `2t + 1` edges of maximum degree at most `t + 1`.
pub fn lemma1_forests(g1: &ColoredGraph, t: usize) -> Result<(ForestFamily, LeftoverReport)> {
    lemma1_forests_variant(g1, t, 0)
}

/// Like [`lemma1_forests`]; for `attempt > 0` the family is completed to an
/// edge-maximal one along a shuffled edge order, giving different forests
/// with the same bounds.
pub fn lemma1_forests_variant(g1: &ColoredGraph, t: usize, attempt: u64) -> Result<(ForestFamily, LeftoverReport)> {
    check_hypotheses(g1, t)?;
    let split = split_by_multiplicity(g1);
    let (c1, m1) = split.histogram[0];
    let order = edge_order(g1.edge_count(), attempt);
    let mut forests = if m1 >= 2 * t + 2 {
        heavy_color_case(g1, t, c1)
    } else {
        matching_case(g1, t, &order)
    };
    if attempt > 0 {
        make_edge_maximal(g1, &mut forests, &order);
    }
    let fam = ForestFamily::new(forests, Disjointness::EdgeDisjoint);
    let report = LeftoverReport::compute(g1, &fam);
    if !fam.is_valid(g1) || report.edge_count > 2 * t + 1 || report.max_degree > t + 1 {
        return Err(Error::internal("forest lemma bounds", g1));
    }
    Ok((fam, report))
}

/// One heavy color: first spread `t` of its edges from the busiest vertices,
/// then one other-colored edge per forest from the busiest vertices.
fn heavy_color_case(g: &ColoredGraph, t: usize, c1: usize) -> Vec<Forest> {
    let mut rest = Remaining::new(g);
    let mut forests = vec![Forest::empty(); t];
    for f in forests.iter_mut() {
        let heavy = |i: usize| g.color(i) == c1;
        let Some(v) = rest.busiest(heavy) else { break };
        let e = rest.at(v).find(|&i| heavy(i)).expect("busiest vertex has an edge");
        rest.alive[e] = false;
        f.insert(e);
    }
    for f in forests.iter_mut() {
        let light = |i: usize| g.color(i) != c1;
        let candidates: Vec<usize> = (0..g.vertex_count())
            .filter(|&v| rest.degree(v, light) > 0)
            .collect();
        let Some(&v) = candidates
            .iter()
            .rev()
            .max_by_key(|&&v| rest.degree(v, |_| true))
        else {
            break;
        };
        let e = rest.at(v).find(|&i| light(i)).expect("candidate has a light edge");
        rest.alive[e] = false;
        f.insert(e);
    }
    forests
}

/// Step `j` covers every vertex of degree `2t + 2 - j` with a rainbow forest
/// obtained from a vertex-to-color matching; the family is then made
/// edge-maximal.
fn matching_case(g: &ColoredGraph, t: usize, order: &[usize]) -> Vec<Forest> {
    let n = g.vertex_count();
    let mut rest = Remaining::new(g);
    let mut forests = Vec::with_capacity(t);
    for j in 1..=t {
        let target = 2 * t + 2 - j;
        let tight: Vec<usize> = (0..n).filter(|&v| rest.degree(v, |_| true) == target).collect();
        let mut chosen = Vec::new();
        if tight.is_empty() {
            if let Some(v) = rest.busiest(|_| true) {
                chosen.push(rest.at(v).next().expect("busiest vertex has an edge"));
            }
        } else {
            let adjacency: Vec<Vec<usize>> = tight
                .iter()
                .map(|&v| {
                    let mut cs: Vec<usize> = rest.at(v).map(|i| g.color(i)).collect();
                    cs.sort_unstable();
                    cs.dedup();
                    cs
                })
                .collect();
            let m = max_bipartite_matching(&BipartiteGraph::new(g.color_count(), adjacency));
            for (l, c) in m.pairs() {
                let e = rest
                    .at(tight[l])
                    .find(|&i| g.color(i) == c)
                    .expect("matched color is present at the vertex");
                chosen.push(e);
            }
        }
        // A spanning forest of the chosen edges touches every vertex they touch.
        let mut dsu = DisjointSets::new(n);
        let mut f = Forest::empty();
        for e in chosen {
            let edge = g.edge(e);
            if dsu.union(edge.u, edge.v) {
                rest.alive[e] = false;
                f.insert(e);
            }
        }
        forests.push(f);
    }
    make_edge_maximal(g, &mut forests, order);
    forests
}

/// Edge indices in order for attempt 0, shuffled by a seeded generator after.
pub(crate) fn edge_order(m: usize, attempt: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m).collect();
    if attempt > 0 {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(attempt));
    }
    order
}

/// Offers every edge outside the family, in `order`, to the smallest forest
/// that stays an acyclic rainbow forest, ties going to the lower index. One
/// pass suffices: forests only grow, so an edge refused once stays refused.
pub(crate) fn make_edge_maximal(g: &ColoredGraph, forests: &mut [Forest], order: &[usize]) {
    let mut dsus: Vec<DisjointSets> = forests
        .iter()
        .map(|f| {
            let mut d = DisjointSets::new(g.vertex_count());
            for &i in f.edges() {
                d.union(g.edge(i).u, g.edge(i).v);
            }
            d
        })
        .collect();
    let mut colors: Vec<_> = forests.iter().map(|f| f.colors(g)).collect();
    for &i in order {
        if forests.iter().any(|f| f.contains(i)) {
            continue;
        }
        let e = *g.edge(i);
        let open = (0..forests.len())
            .filter(|&s| !colors[s].contains(e.color) && !dsus[s].same(e.u, e.v))
            .min_by_key(|&s| forests[s].len());
        if let Some(s) = open {
            dsus[s].union(e.u, e.v);
            colors[s].insert(e.color);
            forests[s].insert(i);
        }
    }
}
