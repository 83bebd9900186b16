use crate::graph::VertexPartition;

/// Every set partition of `0..n` in restricted-growth lexicographic order,
/// optionally limited to at most `max_blocks` blocks.
#[derive(Debug, Clone)]
pub struct PartitionStream {
    current: Vec<usize>,
    // prefix_max[i] = max(current[0..=i])
    prefix_max: Vec<usize>,
    max_blocks: usize,
    started: bool,
    done: bool,
}

impl PartitionStream {
    pub fn new(n: usize) -> Self {
        Self::with_max_blocks(n, n)
    }

    pub fn with_max_blocks(n: usize, max_blocks: usize) -> Self {
        PartitionStream {
            current: vec![0; n],
            prefix_max: vec![0; n],
            max_blocks: max_blocks.max(1),
            started: false,
            done: n == 0,
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.current.len();
        for i in (1..n).rev() {
            let bound = self.prefix_max[i - 1] + 1;
            if self.current[i] < bound && self.current[i] + 1 < self.max_blocks {
                self.current[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for PartitionStream {
    type Item = VertexPartition;

    fn next(&mut self) -> Option<VertexPartition> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        let blocks = self.prefix_max.last().map_or(0, |m| m + 1);
        Some(VertexPartition::from_rgs_unchecked(self.current.clone(), blocks))
    }
}

/// Bell number `B(n)`.
pub fn bell_number(n: usize) -> u128 {
    // Bell triangle.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}
