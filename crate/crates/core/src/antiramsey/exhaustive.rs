use crate::error::{Error, Result};
use crate::graph::{ColoredGraph, Disjointness, Forest, ForestFamily};

/// A node counter shared by the backtracking searches.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExhausted(self.limit))
        } else {
            Ok(())
        }
    }
}

/// Outcome of a complete search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Packing {
    Found(ForestFamily),
    /// The search finished without finding trees.
    Absent,
}

impl Packing {
    pub fn trees(&self) -> Option<&ForestFamily> {
        match self {
            Packing::Found(f) => Some(f),
            Packing::Absent => None,
        }
    }
}

/// Edge sets as bit masks over edge indices.
pub type EdgeMask = u128;

pub fn mask_to_forest(mask: EdgeMask) -> Forest {
    Forest::new((0..128).filter(|i| mask >> i & 1 == 1).collect())
}

fn check_size(g: &ColoredGraph) -> Result<()> {
    if g.edge_count() > 128 {
        return Err(Error::TooLarge(format!("{} edges; the exhaustive search handles at most 128", g.edge_count())));
    }
    Ok(())
}

/// Every spanning tree of `g` (rainbow ones only when `rainbow`), in
/// lexicographic order of their sorted edge lists.
pub fn spanning_trees(g: &ColoredGraph, rainbow: bool, budget: &mut Budget) -> Result<Vec<EdgeMask>> {
    check_size(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    struct Walk<'a> {
        g: &'a ColoredGraph,
        rainbow: bool,
        out: Vec<EdgeMask>,
    }
    fn rec(
        w: &mut Walk,
        budget: &mut Budget,
        next: usize,
        need: usize,
        comp: &mut Vec<usize>,
        colors: &mut Vec<bool>,
        mask: EdgeMask,
    ) -> Result<()> {
        budget.tick()?;
        if need == 0 {
            w.out.push(mask);
            return Ok(());
        }
        let m = w.g.edge_count();
        for i in next..m {
            if m - i < need {
                break;
            }
            let e = *w.g.edge(i);
            let (a, b) = (comp[e.u], comp[e.v]);
            if a == b || (w.rainbow && colors[e.color]) {
                continue;
            }
            let saved = comp.clone();
            for c in comp.iter_mut() {
                if *c == b {
                    *c = a;
                }
            }
            colors[e.color] = true;
            rec(w, budget, i + 1, need - 1, comp, colors, mask | 1 << i)?;
            colors[e.color] = false;
            *comp = saved;
        }
        Ok(())
    }
    let mut w = Walk {
        g,
        rainbow,
        out: Vec::new(),
    };
    let mut comp: Vec<usize> = (0..n).collect();
    let mut colors = vec![false; g.color_count()];
    rec(&mut w, budget, 0, n - 1, &mut comp, &mut colors, 0)?;
    Ok(w.out)
}

/// Whether some `t` of the given edge sets are pairwise disjoint; returns
/// the lexicographically first such choice of indices.
pub fn disjoint_choice(trees: &[EdgeMask], t: usize, budget: &mut Budget) -> Result<Option<Vec<usize>>> {
    fn rec(
        trees: &[EdgeMask],
        t: usize,
        from: usize,
        used: EdgeMask,
        chosen: &mut Vec<usize>,
        budget: &mut Budget,
    ) -> Result<bool> {
        if chosen.len() == t {
            return Ok(true);
        }
        for i in from..trees.len() {
            if trees.len() - i < t - chosen.len() {
                break;
            }
            if trees[i] & used != 0 {
                continue;
            }
            budget.tick()?;
            chosen.push(i);
            if rec(trees, t, i + 1, used | trees[i], chosen, budget)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let mut chosen = Vec::with_capacity(t);
    Ok(rec(trees, t, 0, 0, &mut chosen, budget)?.then_some(chosen))
}

/// Complete search for `t` edge-disjoint rainbow spanning trees.
pub fn exhaustive_edge_disjoint_search(g: &ColoredGraph, t: usize, budget: &mut Budget) -> Result<Packing> {
    if t == 0 {
        return Ok(Packing::Found(ForestFamily::empty(0, Disjointness::EdgeDisjoint)));
    }
    if g.vertex_count() <= 1 {
        return Ok(Packing::Found(ForestFamily::empty(t, Disjointness::EdgeDisjoint)));
    }
    let trees = spanning_trees(g, true, budget)?;
    Ok(match disjoint_choice(&trees, t, budget)? {
        Some(idx) => Packing::Found(ForestFamily::new(
            idx.into_iter().map(|i| mask_to_forest(trees[i])).collect(),
            Disjointness::EdgeDisjoint,
        )),
        None => Packing::Absent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn search(g: &ColoredGraph, t: usize) -> Packing {
        exhaustive_edge_disjoint_search(g, t, &mut Budget::unlimited()).unwrap()
    }

    #[test]
    fn cayley_counts() {
        for n in 2..=6 {
            let g = ColoredGraph::complete(n, |_, _| 0).unwrap();
            let all = spanning_trees(&g, false, &mut Budget::unlimited()).unwrap();
            assert_eq!(all.len(), n.pow(n as u32 - 2));
            assert_eq!(spanning_trees(&g, true, &mut Budget::unlimited()).unwrap().len(), usize::from(n == 2));
        }
    }

    #[test]
    fn examples() {
        let k4 = ColoredGraph::rainbow_complete(4);
        let fam = search(&k4, 2).trees().cloned().unwrap();
        assert!(fam.is_valid(&k4) && fam.all_spanning_trees(&k4));
        assert_eq!(search(&k4, 3), Packing::Absent);

        let two = ColoredGraph::complete(4, |u, _| usize::from(u > 0)).unwrap();
        assert_eq!(search(&two, 1), Packing::Absent);

        let mono = ColoredGraph::complete(5, |_, _| 0).unwrap();
        assert_eq!(search(&mono, 1), Packing::Absent);
    }

    #[test]
    fn budget_is_enforced() {
        let g = ColoredGraph::rainbow_complete(6);
        let r = exhaustive_edge_disjoint_search(&g, 3, &mut Budget::new(50));
        assert!(matches!(r, Err(Error::BudgetExhausted(50))));
    }
}
