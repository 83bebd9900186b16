use fixedbitset::FixedBitSet;
use std::fmt;

/// A set of color ids.
#[derive(Clone, Default)]
pub struct ColorSet(FixedBitSet);

impl PartialEq for ColorSet {
    fn eq(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0) && other.0.is_subset(&self.0)
    }
}

impl Eq for ColorSet {}

impl ColorSet {
    pub fn with_capacity(colors: usize) -> Self {
        ColorSet(FixedBitSet::with_capacity(colors))
    }

    pub fn insert(&mut self, color: usize) {
        self.0.grow(color + 1);
        self.0.insert(color);
    }

    pub fn remove(&mut self, color: usize) {
        if color < self.0.len() {
            self.0.set(color, false);
        }
    }

    pub fn contains(&self, color: usize) -> bool {
        self.0.contains(color)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    /// Colors in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn union_with(&mut self, other: &ColorSet) {
        self.0.union_with(&other.0);
    }

    pub fn difference(&self, other: &ColorSet) -> ColorSet {
        let mut out = self.clone();
        out.0.difference_with(&other.0);
        out
    }

    pub fn is_disjoint(&self, other: &ColorSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<usize> for ColorSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ColorSet::default();
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_ignores_capacity() {
        let mut a = ColorSet::with_capacity(3);
        a.insert(1);
        let b: ColorSet = [1].into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn difference_and_len() {
        let a: ColorSet = [0, 2, 5].into_iter().collect();
        let b: ColorSet = [2].into_iter().collect();
        assert_eq!(a.difference(&b).iter().collect::<Vec<_>>(), vec![0, 5]);
        assert_eq!(a.len(), 3);
        assert!(!a.is_disjoint(&b));
    }
}
