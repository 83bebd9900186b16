use std::borrow::Cow;

use super::lemma::{edge_order, lemma1_forests_variant, make_edge_maximal, LeftoverReport};
use super::matching::{max_bipartite_matching, BipartiteGraph};
use super::split::split_by_multiplicity;
use super::{coarsen_to, dominated_colors, gamma, r_formula};
use crate::color_disjoint::solve_color_disjoint;
use crate::error::{Error, Result};
use crate::extension::extend_to_trees;
use crate::graph::{validate_family, ColorSet, ColoredGraph, Disjointness, Forest, ForestFamily};

/// What the pipeline did at each level, outermost first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineStep {
    /// Surplus colors were merged down to the threshold.
    Coarsened { n: usize, from: usize, to: usize },
    /// `n = 2t + 2`: forest lemma followed by an extension. `attempt` is the
    /// forest variant that extended; the first one need not.
    BaseCase { n: usize, attempt: u64 },
    /// `n = 2t + 1`: direct forests followed by an extension.
    OddCase { n: usize, attempt: u64 },
    /// A vertex with enough private colors was removed and re-attached.
    RemovedVertex { n: usize, v: usize },
    /// Two vertices were removed, the rest solved color-disjointly and the
    /// pair re-attached through a matching on `s` reserved colors plus
    /// `confined` colors that only occur at the pair.
    PairedVertices {
        n: usize,
        v1: usize,
        v2: usize,
        s: usize,
        confined: usize,
    },
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub trees: ForestFamily,
    pub steps: Vec<PipelineStep>,
}

/// Colors sufficient for `t` edge-disjoint rainbow spanning trees in `K_n`.
pub fn threshold(n: usize, t: usize) -> Result<usize> {
    Ok(r_formula(n, t)? + 1)
}

fn require(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what()))
    }
}

fn check_complete(g: &ColoredGraph, t: usize, min_t: usize) -> Result<usize> {
    if !g.is_complete_simple() {
        return Err(Error::NotComplete);
    }
    require(t >= min_t, || format!("this pipeline needs t >= {min_t}, got {t}"))?;
    let need = threshold(g.vertex_count(), t)?;
    require(g.color_count() >= need, || {
        format!("K_{} needs at least {need} colors, got {}", g.vertex_count(), g.color_count())
    })?;
    Ok(need)
}

fn coarsened<'g>(g: &'g ColoredGraph, k: usize, steps: &mut Vec<PipelineStep>) -> Cow<'g, ColoredGraph> {
    if g.color_count() <= k {
        return Cow::Borrowed(g);
    }
    steps.push(PipelineStep::Coarsened {
        n: g.vertex_count(),
        from: g.color_count(),
        to: k,
    });
    Cow::Owned(coarsen_to(g, k))
}

fn edge_disjoint_trees(g: &ColoredGraph, forests: Vec<Forest>, step: &str) -> Result<ForestFamily> {
    let fam = ForestFamily::new(forests, Disjointness::EdgeDisjoint);
    if validate_family(g, &fam).is_ok() && fam.all_spanning_trees(g) {
        Ok(fam)
    } else {
        Err(Error::internal(step, g))
    }
}

fn lift(forest: &Forest, origin: &[usize], extra: &[usize]) -> Forest {
    Forest::new(forest.edges().iter().map(|&i| origin[i]).chain(extra.iter().copied()).collect())
}

/// Validates the output against the caller's graph; coarsening only merges
/// colors, so trees rainbow after merging are rainbow before it.
fn finish(g: &ColoredGraph, trees: ForestFamily, steps: Vec<PipelineStep>) -> Result<PipelineOutput> {
    let trees = edge_disjoint_trees(g, trees.forests, "final validation")?;
    Ok(PipelineOutput { trees, steps })
}

/// `K_{2t+2}` with at least `2t^2 + 1` colors, `t >= 3`.
pub fn base_case_n2t2(g: &ColoredGraph, t: usize) -> Result<PipelineOutput> {
    let need = check_complete(g, t, 3)?;
    require(g.vertex_count() == 2 * t + 2, || format!("base case needs n = {}", 2 * t + 2))?;
    let mut steps = Vec::new();
    let trees = base_case(g, t, need, &mut steps)?;
    finish(g, trees, steps)
}

fn base_case(g: &ColoredGraph, t: usize, need: usize, steps: &mut Vec<PipelineStep>) -> Result<ForestFamily> {
    let g = coarsened(g, need, steps);
    let (trees, attempt) = extend_some_variant(&g, "base-case extension", |g1, attempt| {
        lemma1_forests_variant(g1, t, attempt).map_err(|e| match e {
            Error::InternalFailure { step, .. } => Error::internal(step, &g),
            other => Error::internal(format!("forest lemma rejected its input: {other}"), &g),
        })
    })?;
    steps.push(PipelineStep::BaseCase {
        n: g.vertex_count(),
        attempt,
    });
    Ok(trees)
}

/// Forest variants tried before giving up on an extension.
pub const FOREST_VARIANTS: u64 = 256;

/// Builds forests in the repeated-color subgraph and extends them by the
/// single-use colors, trying variants in turn. The bounds on the leftover
/// edges make every partition inequality hold, yet a family can still fail
/// to extend when its forests crowd one vertex; another variant then helps.
fn extend_some_variant(
    g: &ColoredGraph,
    step: &str,
    forests: impl Fn(&ColoredGraph, u64) -> Result<(ForestFamily, LeftoverReport)>,
) -> Result<(ForestFamily, u64)> {
    let split = split_by_multiplicity(g);
    let g1 = g.edge_subgraph(&split.g1);
    for attempt in 0..FOREST_VARIANTS {
        let (fam1, _) = forests(&g1, attempt)?;
        let lifted = fam1.forests.iter().map(|f| lift(f, &split.g1, &[])).collect();
        let sol = extend_to_trees(g, &ForestFamily::new(lifted, Disjointness::EdgeDisjoint))?;
        if let Some(trees) = sol.certificate.trees() {
            return Ok((edge_disjoint_trees(g, trees.forests.clone(), step)?, attempt));
        }
        log::debug!("{step}: forest variant {attempt} does not extend");
    }
    Err(Error::internal(step, g))
}

/// The forest stage for `K_{2t+1}` at exactly the threshold: `t`
/// edge-disjoint rainbow forests in the repeated-color subgraph `g1`
/// leaving at most `t` of its edges unused.
pub fn n2t1_forests(g1: &ColoredGraph, t: usize) -> Result<(ForestFamily, LeftoverReport)> {
    n2t1_forests_variant(g1, t, 0)
}

/// Like [`n2t1_forests`]; for `attempt > 0` the edges are taken in a
/// shuffled order and the family is completed to an edge-maximal one.
pub fn n2t1_forests_variant(g1: &ColoredGraph, t: usize, attempt: u64) -> Result<(ForestFamily, LeftoverReport)> {
    let split = split_by_multiplicity(g1);
    require(t >= 1 && g1.vertex_count() == 2 * t + 1, || format!("odd case needs n = {}", 2 * t + 1))?;
    require(split.g2.is_empty(), || "odd case needs every color repeated".into())?;
    require(split.excess() == 2 * t - 1, || format!("odd case needs excess {}", 2 * t - 1))?;
    let (c1, m1) = split.histogram[0];
    let order = edge_order(g1.edge_count(), attempt);
    let mut forests = vec![Forest::empty(); t];
    if m1 >= t + 2 {
        let mut by_color = vec![Vec::new(); g1.color_count()];
        for &i in &order {
            by_color[g1.color(i)].push(i);
        }
        for (f, &e) in forests.iter_mut().zip(&by_color[c1]) {
            f.insert(e);
        }
        for (f, &(c, _)) in forests.iter_mut().zip(&split.histogram[1..]) {
            f.insert(by_color[c][0]);
        }
        if attempt > 0 {
            make_edge_maximal(g1, &mut forests, &order);
        }
    } else {
        make_edge_maximal(g1, &mut forests, &order);
    }
    let fam = ForestFamily::new(forests, Disjointness::EdgeDisjoint);
    let report = LeftoverReport::compute(g1, &fam);
    if !fam.is_valid(g1) || report.edge_count > t {
        return Err(Error::internal("odd-case forest bound", g1));
    }
    Ok((fam, report))
}

/// `K_{2t+1}` with at least `2t^2 - t + 1` colors, `t >= 1`.
pub fn solver_n2t1(g: &ColoredGraph, t: usize) -> Result<PipelineOutput> {
    let need = check_complete(g, t, 1)?;
    require(g.vertex_count() == 2 * t + 1, || format!("odd case needs n = {}", 2 * t + 1))?;
    let mut steps = Vec::new();
    let c = coarsened(g, need, &mut steps);
    let (trees, attempt) = extend_some_variant(&c, "odd-case extension", |g1, attempt| {
        n2t1_forests_variant(g1, t, attempt).map_err(|e| match e {
            Error::InternalFailure { step, .. } => Error::internal(step, &c),
            other => Error::internal(format!("odd-case forests rejected their input: {other}"), &c),
        })
    })?;
    steps.push(PipelineStep::OddCase {
        n: c.vertex_count(),
        attempt,
    });
    finish(g, trees, steps)
}

/// `K_n` with `n >= 2t + 3`, at least `C(n-2, 2) + t + 1` colors and `t >= 3`.
pub fn induction_step(g: &ColoredGraph, t: usize) -> Result<PipelineOutput> {
    check_complete(g, t, 3)?;
    require(g.vertex_count() >= 2 * t + 3, || format!("induction needs n >= {}", 2 * t + 3))?;
    let mut steps = Vec::new();
    let trees = induct(g, t, &mut steps)?;
    finish(g, trees, steps)
}

fn induct(g: &ColoredGraph, t: usize, steps: &mut Vec<PipelineStep>) -> Result<ForestFamily> {
    let n = g.vertex_count();
    let need = threshold(n, t)?;
    if g.color_count() < need {
        return Err(Error::internal("induction lost too many colors", g));
    }
    if n == 2 * t + 2 {
        return base_case(g, t, need, steps);
    }
    let g = coarsened(g, need, steps);
    let dominated: Vec<ColorSet> = (0..n).map(|v| dominated_colors(&g, v)).collect();
    let private: Vec<Vec<usize>> = (0..n).map(|v| gamma(&g, v, &dominated[v])).collect();

    if let Some(v) = (0..n).find(|&v| private[v].len() >= t && dominated[v].len() <= n - 3) {
        steps.push(PipelineStep::RemovedVertex { n, v });
        let (h, origin) = g.remove_vertices(&[v]);
        let sub = induct(&h, t, steps)?;
        let forests = sub
            .forests
            .iter()
            .zip(&private[v])
            .map(|(f, &e)| lift(f, &origin, &[e]))
            .collect();
        return edge_disjoint_trees(&g, forests, "re-attach removed vertex");
    }

    let lows: Vec<usize> = (0..n).filter(|&v| private[v].len() < t).collect();
    if lows.len() < 2 {
        return Err(Error::internal("fewer than two vertices with few private colors", &g));
    }
    pair_case(&g, t, &lows, &dominated, steps)
}

/// Reserved colors: the colors private to `v1` or `v2`, grown in ascending
/// id by colors at `v2`, then at `v1`, then any, until `v1` sees `t` reserved
/// edges, `v2` sees `t + 1` and there are at least `t + 1` reserved colors.
pub(crate) fn reserve_colors(g: &ColoredGraph, t: usize, v1: usize, v2: usize, dominated: &[ColorSet]) -> ColorSet {
    let mut s = dominated[v1].clone();
    s.union_with(&dominated[v2]);
    let colors_at = |v: usize| {
        let mut cs: Vec<usize> = g.edges().iter().filter(|e| e.touches(v)).map(|e| e.color).collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    };
    for (v, want) in [(v2, t + 1), (v1, t)] {
        for c in colors_at(v) {
            if gamma(g, v, &s).len() >= want {
                break;
            }
            s.insert(c);
        }
    }
    for c in 0..g.color_count() {
        if s.len() >= t + 1 {
            break;
        }
        s.insert(c);
    }
    s
}

/// Colors all of whose edges touch `v1` or `v2`; they vanish from
/// `G - {v1, v2}` whether reserved or not.
fn confined_colors(g: &ColoredGraph, v1: usize, v2: usize) -> ColorSet {
    let mut away = vec![false; g.color_count()];
    for e in g.edges() {
        if !e.touches(v1) && !e.touches(v2) {
            away[e.color] = true;
        }
    }
    (0..g.color_count()).filter(|&c| !away[c]).collect()
}

/// Tries ordered pairs of low vertices, fewest colors lost first. The
/// reserved set `S` is widened by every color confined to the pair: this
/// leaves `G'` unchanged and only adds edges to the matching, and the color
/// count of `G'` is then exactly the total minus `|S|`.
fn pair_case(
    g: &ColoredGraph,
    t: usize,
    lows: &[usize],
    dominated: &[ColorSet],
    steps: &mut Vec<PipelineStep>,
) -> Result<ForestFamily> {
    let n = g.vertex_count();
    let mut candidates = Vec::new();
    for &v1 in lows {
        for &v2 in lows.iter().filter(|&&v| v != v1) {
            let s = reserve_colors(g, t, v1, v2, dominated);
            if !(t < s.len() && s.len() <= 2 * t + 1 && 2 * t + 1 <= n - 2) {
                return Err(Error::internal(format!("reserved color count {} out of range", s.len()), g));
            }
            let mut wide = s.clone();
            wide.union_with(&confined_colors(g, v1, v2));
            candidates.push((wide.len(), v1, v2, s.len(), wide));
        }
    }
    candidates.sort_by_key(|c| c.0);
    for (_, v1, v2, s, wide) in candidates {
        let (h, origin) = g.remove_vertices_where(&[v1, v2], |e| !wide.contains(e.color));
        let sol = solve_color_disjoint(&h, t)?;
        let Some(inner) = sol.certificate.trees() else {
            log::debug!("pair ({v1}, {v2}) leaves too few colors; trying the next");
            continue;
        };
        let a = gamma(g, v1, &wide);
        let b: Vec<usize> = gamma(g, v2, &wide).into_iter().filter(|&i| !g.edge(i).touches(v1)).collect();
        let adjacency = a
            .iter()
            .map(|&x| (0..b.len()).filter(|&y| g.color(b[y]) != g.color(x)).collect())
            .collect();
        let m = max_bipartite_matching(&BipartiteGraph::new(b.len(), adjacency));
        if m.size() < t {
            return Err(Error::internal("re-attaching matching too small", g));
        }
        steps.push(PipelineStep::PairedVertices {
            n,
            v1,
            v2,
            s,
            confined: wide.len() - s,
        });
        let forests = inner
            .forests
            .iter()
            .zip(m.pairs())
            .map(|(f, (x, y))| lift(f, &origin, &[a[x], b[y]]))
            .collect();
        return edge_disjoint_trees(g, forests, "re-attach vertex pair");
    }
    Err(Error::internal("color-disjoint trees after removing a pair", g))
}

/// Runs whichever construction matches `n` against `2t + 1`, `2t + 2` or more.
pub fn pipeline(g: &ColoredGraph, t: usize) -> Result<PipelineOutput> {
    let n = g.vertex_count();
    match n.checked_sub(2 * t) {
        Some(1) => solver_n2t1(g, t),
        Some(2) => base_case_n2t2(g, t),
        Some(d) if d >= 3 => induction_step(g, t),
        _ => Err(Error::Precondition(format!("no construction for n = {n}, t = {t}"))),
    }
}
