//! Exhaustive enumeration of the nonempty subsets of a small source set,
//! tracking the union of per-source target sets as a bitset.

use alloc::vec;
use alloc::vec::Vec;

/// Per-source target sets over `0..n_targets`.
#[derive(Debug, Clone)]
pub struct ReachTable {
    words: usize,
    n_targets: usize,
    rows: Vec<Vec<u64>>,
}

/// A subset as a bitmask over sources with its image size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetScore {
    pub mask: u64,
    pub image: u64,
    pub size: u64,
}

impl SubsetScore {
    /// Ratio order, then smaller subsets, then lexicographically smaller
    /// sorted member lists.
    pub fn better_than(&self, other: &SubsetScore) -> bool {
        let lhs = self.image as u128 * other.size as u128;
        let rhs = other.image as u128 * self.size as u128;
        if lhs != rhs {
            return lhs < rhs;
        }
        if self.size != other.size {
            return self.size < other.size;
        }
        let diff = self.mask ^ other.mask;
        diff != 0 && self.mask & (diff & diff.wrapping_neg()) != 0
    }

    pub fn same_ratio(&self, other: &SubsetScore) -> bool {
        self.image as u128 * other.size as u128 == other.image as u128 * self.size as u128
    }

    pub fn members(&self) -> Vec<usize> {
        (0..64).filter(|&i| self.mask & (1u64 << i) != 0).collect()
    }
}

impl ReachTable {
    pub fn new(n_targets: usize, sets: impl IntoIterator<Item = impl IntoIterator<Item = usize>>) -> Self {
        let words = n_targets.div_ceil(64).max(1);
        let rows = sets
            .into_iter()
            .map(|set| {
                let mut row = vec![0u64; words];
                for t in set {
                    assert!(t < n_targets, "target out of range");
                    row[t / 64] |= 1 << (t % 64);
                }
                row
            })
            .collect();
        Self { words, n_targets, rows }
    }

    pub fn n_sources(&self) -> usize {
        self.rows.len()
    }

    pub fn n_targets(&self) -> usize {
        self.n_targets
    }

    /// Image size of a subset given by mask.
    pub fn image_size(&self, mask: u64) -> u64 {
        let mut acc = vec![0u64; self.words];
        for (i, row) in self.rows.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc.iter_mut().zip(row).for_each(|(a, r)| *a |= r);
            }
        }
        acc.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Calls `visit` once per nonempty subset. Must have fewer than 64 sources.
    pub fn for_each_subset(&self, mut visit: impl FnMut(SubsetScore)) {
        let n = self.rows.len();
        assert!(n < 64, "too many sources for exhaustive enumeration");
        if n == 0 {
            return;
        }
        let mut stack = vec![vec![0u64; self.words]; n + 1];
        self.recurse(0, 0, 0, &mut stack, &mut visit);
    }

    fn recurse(&self, start: usize, depth: usize, mask: u64, stack: &mut [Vec<u64>], visit: &mut impl FnMut(SubsetScore)) {
        for j in start..self.rows.len() {
            let (lower, upper) = stack.split_at_mut(depth + 1);
            let parent = &lower[depth];
            let child = &mut upper[0];
            let mut image = 0u64;
            for ((c, p), r) in child.iter_mut().zip(parent).zip(&self.rows[j]) {
                *c = p | r;
                image += c.count_ones() as u64;
            }
            let m = mask | (1 << j);
            visit(SubsetScore { mask: m, image, size: (depth + 1) as u64 });
            self.recurse(j + 1, depth + 1, m, stack, visit);
        }
    }

    /// Best subset under [`SubsetScore::better_than`] among those whose size
    /// passes `keep`.
    pub fn min_ratio(&self, keep: impl Fn(u64) -> bool) -> Option<SubsetScore> {
        let mut best: Option<SubsetScore> = None;
        self.for_each_subset(|s| {
            if keep(s.size) && best.is_none_or(|b| s.better_than(&b)) {
                best = Some(s);
            }
        });
        best
    }

    /// Every subset attaining the minimum ratio, in enumeration order.
    pub fn all_minimizers(&self) -> Vec<SubsetScore> {
        let Some(best) = self.min_ratio(|_| true) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        self.for_each_subset(|s| {
            if s.same_ratio(&best) {
                out.push(s);
            }
        });
        out
    }
}
