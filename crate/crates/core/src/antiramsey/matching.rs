/// A bipartite graph given by the right-side neighbours of each left vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub right: usize,
    pub adjacency: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(right: usize, adjacency: Vec<Vec<usize>>) -> Self {
        debug_assert!(adjacency.iter().flatten().all(|&r| r < right));
        BipartiteGraph { right, adjacency }
    }

    pub fn left(&self) -> usize {
        self.adjacency.len()
    }
}

/// A matching as the partner of each left vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub partner: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.partner.iter().flatten().count()
    }

    /// Matched `(left, right)` pairs in left order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.partner
            .iter()
            .enumerate()
            .filter_map(|(l, r)| r.map(|r| (l, r)))
    }
}

/// Maximum matching by augmenting paths (Kuhn). Left vertices are tried in
/// order and neighbours in adjacency order, so the result is deterministic.
pub fn max_bipartite_matching(h: &BipartiteGraph) -> Matching {
    fn augment(h: &BipartiteGraph, l: usize, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &h.adjacency[l] {
            if std::mem::replace(&mut seen[r], true) {
                continue;
            }
            if owner[r].map_or(true, |o| augment(h, o, seen, owner)) {
                owner[r] = Some(l);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; h.right];
    for l in 0..h.left() {
        let mut seen = vec![false; h.right];
        augment(h, l, &mut seen, &mut owner);
    }
    let mut partner = vec![None; h.left()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(l) = o {
            partner[*l] = Some(r);
        }
    }
    Matching { partner }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_examples() {
        let full = BipartiteGraph::new(3, vec![vec![0, 1, 2]; 3]);
        assert_eq!(max_bipartite_matching(&full).size(), 3);
        let lonely = BipartiteGraph::new(2, vec![vec![0], vec![], vec![0, 1]]);
        let m = max_bipartite_matching(&lonely);
        assert_eq!(m.size(), 2);
        assert_eq!(m.partner[1], None);
    }

    /// Largest set of left vertices with a system of distinct representatives,
    /// by trying every subset of edges of size up to the left count.
    fn brute_force(h: &BipartiteGraph) -> usize {
        let edges: Vec<(usize, usize)> = h
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, r)))
            .collect();
        let mut best = 0;
        for mask in 0u64..1 << edges.len() {
            let chosen: Vec<_> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).collect();
            if chosen.len() <= best {
                continue;
            }
            let mut ls = 0u64;
            let mut rs = 0u64;
            let ok = chosen.iter().all(|&i| {
                let (l, r) = edges[i];
                let fresh = ls >> l & 1 == 0 && rs >> r & 1 == 0;
                ls |= 1 << l;
                rs |= 1 << r;
                fresh
            });
            if ok {
                best = chosen.len();
            }
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            let left = rng.gen_range(0..=5);
            let right = rng.gen_range(1..=5);
            let mut edges = 0;
            let adjacency: Vec<Vec<usize>> = (0..left)
                .map(|_| {
                    (0..right)
                        .filter(|_| {
                            let keep = edges < 16 && rng.gen_bool(0.35);
                            edges += usize::from(keep);
                            keep
                        })
                        .collect()
                })
                .collect();
            let h = BipartiteGraph::new(right, adjacency);
            let m = max_bipartite_matching(&h);
            assert_eq!(m.size(), brute_force(&h));
            for (l, r) in m.pairs() {
                assert!(h.adjacency[l].contains(&r));
            }
        }
    }
}
