use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::exhaustive::{disjoint_choice, exhaustive_edge_disjoint_search, spanning_trees, Budget, EdgeMask, Packing};
use super::r_formula;
use crate::error::{Error, Result};
use crate::graph::{complete_pairs, ColoredGraph};
use crate::partition::PartitionStream;

/// Colorings of `K_n` with `r(n, t)` colors and no `t` edge-disjoint rainbow
/// spanning trees.
///
/// * `n >= 2t + 2`: a rainbow `K_{n-2}`; of the edges touching the last two
///   vertices, `t - 1` get their own colors and the rest share one. Every
///   tree needs two edges there, at most one of them in the shared color.
/// * `n = 2t + 1`: one color on `2t + 1` edges, the rest distinct. The trees
///   would leave only `t` edges unused but can use just `t` of that class.
/// * `n = 2t`: one color on `t + 1` edges, the rest distinct. The trees use
///   every edge, so some tree repeats that color.
///
/// The result is checked by exhaustive search; should that ever fail, random
/// colorings with the same count are tried instead.
pub fn extremal_coloring(n: usize, t: usize, budget: u64) -> Result<ColoredGraph> {
    let r = r_formula(n, t)?;
    if r == 0 {
        return Err(Error::Precondition(format!("r({n}, {t}) = 0 leaves nothing to construct")));
    }
    let pairs: Vec<(usize, usize)> = complete_pairs(n).collect();
    let mut colors = hand_construction(n, t, &pairs).into_iter();
    let g = ColoredGraph::complete(n, |_, _| colors.next().unwrap())?;
    if g.color_count() == r && proven_absent(&g, t, budget)? {
        return Ok(g);
    }
    log::warn!("hand construction for ({n}, {t}) did not verify; searching");
    let mut rng = ChaCha8Rng::seed_from_u64((n * 1000 + t) as u64);
    for _ in 0..10_000 {
        let g = random_coloring(&mut rng, n, r)?;
        if proven_absent(&g, t, budget)? {
            return Ok(g);
        }
    }
    Err(Error::Precondition(format!("no extremal coloring found for ({n}, {t})")))
}

fn hand_construction(n: usize, t: usize, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut colors = vec![0; pairs.len()];
    if n >= 2 * t + 2 {
        let (x, y) = (n - 2, n - 1);
        let mut next = 1;
        let mut outside = 0;
        for (slot, &(u, v)) in colors.iter_mut().zip(pairs) {
            let touches = [u, v].iter().any(|&w| w == x || w == y);
            if !touches || outside + 1 < t {
                outside += usize::from(touches);
                *slot = next;
                next += 1;
            }
        }
    } else {
        let heavy = if n == 2 * t + 1 { 2 * t + 1 } else { t + 1 };
        for (i, slot) in colors.iter_mut().enumerate() {
            *slot = if i < heavy { 0 } else { i - heavy + 1 };
        }
    }
    colors
}

/// A uniformly shuffled surjective coloring of `K_n` with `k` colors.
pub fn random_coloring(rng: &mut impl Rng, n: usize, k: usize) -> Result<ColoredGraph> {
    let m = n * n.saturating_sub(1) / 2;
    if k == 0 || k > m {
        return Err(Error::Precondition(format!("cannot color {m} edges with exactly {k} colors")));
    }
    let mut colors: Vec<usize> = (0..m).map(|i| if i < k { i } else { rng.gen_range(0..k) }).collect();
    colors.shuffle(rng);
    let mut it = colors.into_iter();
    ColoredGraph::complete(n, |_, _| it.next().unwrap())
}

fn proven_absent(g: &ColoredGraph, t: usize, budget: u64) -> Result<bool> {
    Ok(exhaustive_edge_disjoint_search(g, t, &mut Budget::new(budget))? == Packing::Absent)
}

/// Counts from scanning every coloring of `K_n` with `r` and `r + 1` colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub n: usize,
    pub t: usize,
    pub r: usize,
    pub colorings_at_r: u64,
    /// Colorings with `r` colors lacking `t` trees; positive when `r` is
    /// not too large.
    pub absent_at_r: u64,
    pub colorings_above: u64,
    /// Colorings with `r + 1` colors lacking `t` trees; zero when `r` is
    /// not too small.
    pub absent_above: u64,
}

impl VerifyReport {
    pub fn confirmed(&self) -> bool {
        self.absent_at_r > 0 && self.absent_above == 0
    }
}

/// Confirms the value of `r(n, t)` by enumerating every partition of the
/// edges of `K_n` into color classes.
pub fn verify_r_exhaustive(n: usize, t: usize, threads: usize) -> Result<VerifyReport> {
    if n > 5 {
        return Err(Error::TooLarge(format!("K_{n} has too many colorings to enumerate")));
    }
    let r = r_formula(n, t)?;
    let m = n * (n - 1) / 2;
    let skeleton = ColoredGraph::complete(n, |_, _| 0)?;
    let trees = spanning_trees(&skeleton, false, &mut Budget::unlimited())?;
    let lacks = |classes: &[usize]| -> bool {
        let rainbow: Vec<EdgeMask> = trees
            .iter()
            .copied()
            .filter(|&mask| {
                let mut seen = 0u64;
                (0..m).filter(|i| mask >> i & 1 == 1).all(|i| {
                    let bit = 1u64 << classes[i];
                    let fresh = seen & bit == 0;
                    seen |= bit;
                    fresh
                })
            })
            .collect();
        disjoint_choice(&rainbow, t, &mut Budget::unlimited())
            .expect("unlimited budget")
            .is_none()
    };
    let candidates: Vec<Vec<usize>> = PartitionStream::with_max_blocks(m, r + 1)
        .filter(|p| p.block_count() >= r)
        .map(|p| p.assignment().to_vec())
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let tally = pool.install(|| {
        candidates
            .par_iter()
            .map(|classes| {
                let blocks = classes.iter().max().map_or(0, |&b| b + 1);
                let absent = u64::from(lacks(classes));
                if blocks == r {
                    (1, absent, 0, 0)
                } else {
                    (0, 0, 1, absent)
                }
            })
            .reduce(|| (0, 0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3))
    });
    Ok(VerifyReport {
        n,
        t,
        r,
        colorings_at_r: tally.0,
        absent_at_r: tally.1,
        colorings_above: tally.2,
        absent_above: tally.3,
    })
}
