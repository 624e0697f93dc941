//! Fixed-width bitsets over element indices of a finite group.
//!
//! Subgroups are stored canonically as one of these. Ordering is
//! (population irrelevant here) by smallest differing member: of two
//! distinct sets of the same size, the one containing the smaller
//! first-differing element sorts first. Combined with a primary sort
//! on size this yields the canonical subgroup order used everywhere.

use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn singleton(len: usize, idx: usize) -> Self {
        let mut s = BitSet::new(len);
        s.insert(idx);
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn insert(&mut self, idx: usize) {
        debug_assert!(idx < self.len);
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        debug_assert!(idx < self.len);
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.len, other.len);
        BitSet {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// True when `self ∩ other ⊆ third`.
    pub fn intersection_within(&self, other: &BitSet, third: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&third.words)
            .all(|((a, b), c)| (a & b) & !c == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                let low = (a ^ b).trailing_zeros();
                // The set holding the smallest differing element sorts first.
                return if a >> low & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for BitSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_count() {
        let mut s = BitSet::new(130);
        s.insert(0);
        s.insert(65);
        s.insert(129);
        assert!(s.contains(65));
        assert!(!s.contains(64));
        assert_eq!(s.count(), 3);
        assert_eq!(s.members(), vec![0, 65, 129]);
    }

    #[test]
    fn subset_and_ordering() {
        let mut a = BitSet::new(8);
        a.insert(0);
        a.insert(1);
        let mut b = BitSet::new(8);
        b.insert(0);
        b.insert(2);
        assert!(a < b);
        let all = {
            let mut t = BitSet::new(8);
            (0..8).for_each(|i| t.insert(i));
            t
        };
        assert!(a.is_subset_of(&all));
        assert!(!all.is_subset_of(&a));
        assert!(a.intersection_within(&b, &BitSet::singleton(8, 0)));
    }
}
