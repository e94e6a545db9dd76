use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest arity a [`SubsetIndex`] can address.
pub const MAX_ARITY: usize = 32;

/// A subset of `{1, …, m}` stored as a bitmask (bit `i - 1` for member `i`).
///
/// Ordering is lexicographic on the sorted member lists, so `{1,2} < {1,3}
/// < {2} < {2,3}` and the empty set is the smallest element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SubsetIndex(u32);

impl SubsetIndex {
    pub const EMPTY: SubsetIndex = SubsetIndex(0);

    pub fn from_mask(mask: u32) -> Self {
        SubsetIndex(mask)
    }

    /// Builds a subset from 1-based members; duplicates are rejected.
    pub fn new<I: IntoIterator<Item = usize>>(members: I) -> Result<Self> {
        let mut mask = 0u32;
        for i in members {
            if i == 0 || i > MAX_ARITY {
                return Err(Error::InvalidInput(format!("subset member {i} outside 1..={MAX_ARITY}")));
            }
            let bit = 1u32 << (i - 1);
            if mask & bit != 0 {
                return Err(Error::InvalidInput(format!("duplicate subset member {i}")));
            }
            mask |= bit;
        }
        Ok(SubsetIndex(mask))
    }

    /// Panicking shorthand for literals in code and tests.
    pub fn of(members: &[usize]) -> Self {
        Self::new(members.iter().copied()).expect("valid subset literal")
    }

    pub fn singleton(i: usize) -> Self {
        Self::of(&[i])
    }

    /// `{1, …, m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_ARITY);
        if m == MAX_ARITY {
            SubsetIndex(u32::MAX)
        } else {
            SubsetIndex((1u32 << m) - 1)
        }
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_ARITY).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// Largest member, if any.
    pub fn max_member(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros() as usize)
        }
    }

    pub fn within(self, m: usize) -> bool {
        self.max_member().is_none_or(|top| top <= m)
    }

    pub fn members(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn with(self, i: usize) -> Self {
        SubsetIndex(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        SubsetIndex(self.0 & !(1 << (i - 1)))
    }

    pub fn union(self, other: Self) -> Self {
        SubsetIndex(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SubsetIndex(self.0 & other.0)
    }

    pub fn symmetric_difference(self, other: Self) -> Self {
        SubsetIndex(self.0 ^ other.0)
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Image under a 1-based permutation `sigma` (`sigma[i - 1]` is the image of `i`).
    pub fn permuted(self, sigma: &[usize]) -> Self {
        SubsetIndex(self.members().fold(0, |acc, i| acc | (1 << (sigma[i - 1] - 1))))
    }

    /// All subsets of this set of the given size, in lexicographic order.
    pub fn subsets_of_size(self, size: usize) -> Vec<SubsetIndex> {
        let members = self.to_vec();
        let mut out = Vec::new();
        if size > members.len() {
            return out;
        }
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            out.push(SubsetIndex(pick.iter().fold(0, |acc, &p| acc | (1 << (members[p] - 1)))));
            // advance the rightmost position that still has room
            let mut pos = size;
            while pos > 0 && pick[pos - 1] == members.len() - size + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                return out;
            }
            pick[pos - 1] += 1;
            for later in pos..size {
                pick[later] = pick[later - 1] + 1;
            }
        }
    }

    /// All subsets of this set, including the empty set and itself.
    pub fn all_subsets(self) -> impl Iterator<Item = SubsetIndex> {
        let full = self.0;
        // standard submask walk, collected so the order is ascending by mask
        let mut masks = Vec::with_capacity(1 << self.len());
        let mut sub = full;
        loop {
            masks.push(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & full;
        }
        masks.reverse();
        masks.into_iter().map(SubsetIndex)
    }
}

pub struct Members(u32);

impl Iterator for Members {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(low + 1)
    }
}

impl Ord for SubsetIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        let above = !((low << 1).wrapping_sub(1));
        if self.0 & low != 0 {
            // self holds the smaller element at the first difference unless
            // other has already run out of elements
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for SubsetIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SubsetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.members().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
