//! Dense element sets, the working representation for every scan result.
//!
//! A set is a bitset indexed by the dense element index of the group it was
//! built for.  All the centralizer and pseudocentralizer machinery returns
//! these; subgroup validation happens on top of them.

use crate::element::Element;
use crate::error::{Error, Result};
use crate::params::GroupParams;

/// Groups larger than this cannot be materialized as dense sets.  The
/// interesting computations all live at desk scale (order at most a few
/// thousand); the bound just keeps accidental huge allocations out.
pub const MAX_DENSE_ORDER: u64 = 1 << 24;

/// A set of group elements, stored as one bit per element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    params: GroupParams,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(params: GroupParams) -> Result<Self> {
        if params.order() > MAX_DENSE_ORDER {
            return Err(Error::TooLarge {
                order: params.order(),
                limit: MAX_DENSE_ORDER,
            });
        }
        let nwords = (params.order() as usize).div_ceil(64);
        Ok(ElementSet {
            params,
            words: vec![0; nwords],
        })
    }

    pub fn full(params: GroupParams) -> Result<Self> {
        let mut s = Self::empty(params)?;
        let order = params.order();
        for (w, word) in s.words.iter_mut().enumerate() {
            let base = w as u64 * 64;
            *word = if base + 64 <= order {
                u64::MAX
            } else {
                // Partial last word.
                (0..order.saturating_sub(base)).fold(0u64, |acc, b| acc | 1 << b)
            };
        }
        Ok(s)
    }

    pub fn params(&self) -> GroupParams {
        self.params
    }

    pub fn insert(&mut self, idx: u64) {
        self.words[(idx / 64) as usize] |= 1 << (idx % 64);
    }

    pub fn insert_element(&mut self, e: Element) {
        self.insert(self.params.index_of(e));
    }

    pub fn contains(&self, idx: u64) -> bool {
        self.words[(idx / 64) as usize] >> (idx % 64) & 1 == 1
    }

    pub fn contains_element(&self, e: Element) -> bool {
        self.contains(self.params.index_of(e))
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Indices of the members, ascending.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let base = w as u64 * 64;
            BitIter { word }.map(move |b| base + b)
        })
    }

    /// Members as elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.iter().map(|i| self.params.element_at(i))
    }

    pub fn is_subset_of(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &ElementSet) -> ElementSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        ElementSet {
            params: self.params,
            words,
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        ElementSet {
            params: self.params,
            words,
        }
    }

    /// Raw words, used as canonical hash/ordering key by the lattice code.
    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

struct BitIter {
    word: u64,
}

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.word == 0 {
            return None;
        }
        let b = self.word.trailing_zeros() as u64;
        self.word &= self.word - 1;
        Some(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iterate_count() {
        let g = GroupParams::new(2, 2).unwrap();
        let mut s = ElementSet::empty(g).unwrap();
        assert!(s.is_empty());
        for i in [0u64, 1, 63, 17] {
            s.insert(i);
        }
        assert_eq!(s.len(), 4);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1, 17, 63]);
        assert!(s.contains(17));
        assert!(!s.contains(2));
    }

    #[test]
    fn full_set_has_group_order() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let g = GroupParams::new(p, n).unwrap();
            let s = ElementSet::full(g).unwrap();
            assert_eq!(s.len(), g.order());
            assert!(s.contains(g.order() - 1));
        }
    }

    #[test]
    fn set_algebra() {
        let g = GroupParams::new(2, 1).unwrap();
        let mut a = ElementSet::empty(g).unwrap();
        let mut b = ElementSet::empty(g).unwrap();
        for i in [1u64, 2, 3] {
            a.insert(i);
        }
        for i in [2u64, 3, 4] {
            b.insert(i);
        }
        assert_eq!(a.intersect(&b).iter().collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(a.union(&b).len(), 4);
        assert!(a.intersect(&b).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
    }
}
