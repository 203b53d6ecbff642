use alloc::format;
use core::fmt;

use crate::{Error, Result};

/// A subset of `{1, ..., h}` stored as a bitmask (bit `i - 1` for member `i`).
///
/// `I -> I'` holds iff `I' = I + {i}` for some `i` not in `I`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    h: u8,
    bits: u32,
}

impl IndexSet {
    pub const MAX_H: usize = 24;

    pub fn new(h: usize, members: &[usize]) -> Result<Self> {
        if h > Self::MAX_H {
            return Err(Error::InvalidParams(format!("h = {h} exceeds {}", Self::MAX_H)));
        }
        let mut bits = 0u32;
        for &i in members {
            if i == 0 || i > h {
                return Err(Error::IndexOutOfRange { index: i, h });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Self { h: h as u8, bits })
    }

    pub fn from_bits(h: usize, bits: u32) -> Self {
        assert!(h <= Self::MAX_H && (h == 32 || bits >> h == 0), "bits outside the cube");
        Self { h: h as u8, bits }
    }

    pub fn empty(h: usize) -> Self {
        Self::from_bits(h, 0)
    }

    pub fn full(h: usize) -> Self {
        Self::from_bits(h, ((1u64 << h) - 1) as u32)
    }

    /// Every index set of `Q_h` in bitmask order.
    pub fn all(h: usize) -> impl Iterator<Item = IndexSet> {
        (0..(1u32 << h)).map(move |b| IndexSet::from_bits(h, b))
    }

    pub fn h(self) -> usize {
        self.h as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn level(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= self.h() && self.bits & (1 << (i - 1)) != 0
    }

    /// Members in ascending order, 1-based.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (1..=self.h as usize).filter(move |i| bits & (1 << (i - 1)) != 0)
    }

    pub fn insert(self, i: usize) -> IndexSet {
        assert!(i >= 1 && i <= self.h());
        Self { h: self.h, bits: self.bits | (1 << (i - 1)) }
    }

    pub fn complement(self) -> IndexSet {
        Self { h: self.h, bits: !self.bits & Self::full(self.h()).bits }
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        Self { h: self.h, bits: self.bits & !other.bits }
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        Self { h: self.h, bits: self.bits | other.bits }
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.bits & !other.bits == 0
    }

    /// `self -> other`.
    pub fn is_edge_to(self, other: IndexSet) -> bool {
        self.h == other.h && self.is_subset(other) && other.level() == self.level() + 1
    }

    /// All `I'` with `self -> I'`.
    pub fn successors(self) -> impl Iterator<Item = IndexSet> {
        self.complement().members().map(move |i| self.insert(i))
    }

    /// The associate of `self` in the square `lower -> self -> upper`: the
    /// other index set `I'_c` with `lower -> I'_c -> upper`.
    pub fn associate(self, lower: IndexSet, upper: IndexSet) -> Result<IndexSet> {
        if !lower.is_edge_to(self) || !self.is_edge_to(upper) {
            return Err(Error::InvalidChain(format!("{lower:?} -> {self:?} -> {upper:?} is not a chain")));
        }
        Ok(lower.union(upper.difference(self)))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(h: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(h, m).unwrap()
    }

    #[test]
    fn associate_examples() {
        assert_eq!(set(2, &[1]).associate(set(2, &[]), set(2, &[1, 2])).unwrap(), set(2, &[2]));
        assert_eq!(set(3, &[1, 3]).associate(set(3, &[3]), set(3, &[1, 2, 3])).unwrap(), set(3, &[2, 3]));
        assert_eq!(set(2, &[2]).associate(set(2, &[]), set(2, &[1, 2])).unwrap(), set(2, &[1]));
    }

    #[test]
    fn associate_rejects_non_chains() {
        assert!(set(2, &[1]).associate(set(2, &[]), set(2, &[1])).is_err());
        assert!(set(3, &[1, 2]).associate(set(3, &[]), set(3, &[1, 2, 3])).is_err());
    }

    #[test]
    fn edge_relation() {
        assert!(set(3, &[1]).is_edge_to(set(3, &[1, 3])));
        assert!(!set(3, &[1]).is_edge_to(set(3, &[2, 3])));
        assert!(!set(3, &[1]).is_edge_to(set(3, &[1])));
        assert_eq!(set(3, &[2]).successors().count(), 2);
    }

    #[test]
    fn out_of_range() {
        assert_eq!(IndexSet::new(2, &[3]), Err(Error::IndexOutOfRange { index: 3, h: 2 }));
        assert!(IndexSet::new(2, &[0]).is_err());
    }

    #[test]
    fn debug_format() {
        assert_eq!(alloc::format!("{:?}", set(3, &[1, 3])), "{1,3}");
        assert_eq!(alloc::format!("{:?}", IndexSet::empty(2)), "{}");
    }
}
