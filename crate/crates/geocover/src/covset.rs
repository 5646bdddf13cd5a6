//! Compact index sets over the input points.
//!
//! Covered point sets are created and copied constantly during the sweeps,
//! so they are stored as fixed-width bit blocks rather than sorted vectors.

use std::cmp::Ordering;
use std::fmt;

/// A subset of `{0, .., universe-1}` backed by 64-bit blocks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CovSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl CovSet {
    pub fn empty(universe: usize) -> Self {
        CovSet {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Self {
        let mut s = CovSet::empty(universe);
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    /// Flips membership of `i`; crossing the boundary of inverse `i`
    /// toggles whether translates are covered by it.
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / 64] ^= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.universe);
        self.blocks[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn union_with(&mut self, other: &CovSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &CovSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &CovSet) -> bool {
        self.is_subset(other) && self != other
    }

    /// Ascending member indices.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &b)| {
            let mut bits = b;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(bi * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

// Lexicographic on the ascending index sequence, so families of sets sort
// the same way their printed index lists do.
impl Ord for CovSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

impl PartialOrd for CovSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CovSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = CovSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(0) && s.contains(64) && s.contains(129));
        assert!(!s.contains(1));
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.len(), 2);
        s.toggle(64);
        assert!(s.contains(64));
    }

    #[test]
    fn subset_and_order() {
        let a = CovSet::from_indices(10, [0, 1]);
        let b = CovSet::from_indices(10, [0, 1, 2]);
        let c = CovSet::from_indices(10, [1, 2]);
        assert!(a.is_proper_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(!a.is_subset(&c));
        assert!(a < b); // [0,1] < [0,1,2]
        assert!(b < c); // [0,..] < [1,..]
    }
}
