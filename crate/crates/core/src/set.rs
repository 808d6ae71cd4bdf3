//! Fixed-width bitsets over a dense element universe.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

const WORD_BITS: usize = 64;

#[inline]
fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

/// A subset of `0..universe`, stored as a packed bit vector.
///
/// Equality, hashing and ordering look only at the members, so two sets
/// over different universes compare equal when they hold the same indices.
/// Ordering is lexicographic over the ascending member sequence, which is
/// the canonical order used for enumeration output.
#[derive(Clone)]
pub struct ElementSet {
    universe: usize,
    words: Box<[u64]>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; word_count(universe)].into_boxed_slice(),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    /// Builds a set from indices. Panics if any index is outside the universe.
    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    /// Returns true when the index was not already present.
    #[inline]
    pub fn insert(&mut self, index: usize) -> bool {
        assert!(
            index < self.universe,
            "element {index} outside universe of size {}",
            self.universe
        );
        let word = &mut self.words[index / WORD_BITS];
        let mask = 1u64 << (index % WORD_BITS);
        let fresh = *word & mask == 0;
        *word |= mask;
        fresh
    }

    /// Returns true when the index was present.
    #[inline]
    pub fn remove(&mut self, index: usize) -> bool {
        if index >= self.universe {
            return false;
        }
        let word = &mut self.words[index / WORD_BITS];
        let mask = 1u64 << (index % WORD_BITS);
        let present = *word & mask != 0;
        *word &= !mask;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// True when the two sets share at least one member.
    #[inline]
    pub fn intersects(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// The common member when the intersection has exactly one element.
    #[inline]
    pub fn sole_common(&self, other: &ElementSet) -> Option<usize> {
        let mut found = None;
        for (i, (a, b)) in self.words.iter().zip(other.words.iter()).enumerate() {
            let w = a & b;
            if w == 0 {
                continue;
            }
            if found.is_some() || w & (w - 1) != 0 {
                return None;
            }
            found = Some(i * WORD_BITS + w.trailing_zeros() as usize);
        }
        found
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().enumerate().all(|(i, &w)| {
            let o = other.words.get(i).copied().unwrap_or(0);
            w & !o == 0
        })
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (i, a) in self.words.iter_mut().enumerate() {
            *a &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn difference_with(&mut self, other: &ElementSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    /// Copy of `self` with `index` removed.
    pub fn without(&self, index: usize) -> ElementSet {
        let mut out = self.clone();
        out.remove(index);
        out
    }

    /// Copy of `self` with `index` added.
    pub fn with(&self, index: usize) -> ElementSet {
        let mut out = self.clone();
        out.insert(index);
        out
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn significant_words(&self) -> &[u64] {
        let len = self
            .words
            .iter()
            .rposition(|&w| w != 0)
            .map_or(0, |i| i + 1);
        &self.words[..len]
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word_index * WORD_BITS + bit);
            }
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.significant_words() == other.significant_words()
    }
}

impl Eq for ElementSet {}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.significant_words().hash(state);
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_remove_contains() {
        let mut s = ElementSet::empty(130);
        assert!(s.insert(0));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(64));
        assert_eq!(s.to_vec(), vec![0, 64, 129]);
        assert!(s.remove(64));
        assert!(!s.contains(64));
        assert!(!s.contains(500));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn lexicographic_order() {
        let a = ElementSet::from_indices(8, [1, 2]);
        let b = ElementSet::from_indices(8, [1, 3]);
        let c = ElementSet::from_indices(8, [1]);
        let d = ElementSet::from_indices(8, [4]);
        assert!(c < a);
        assert!(a < b);
        assert!(b < d);
        assert!(ElementSet::empty(8) < c);
    }

    #[test]
    fn equality_ignores_universe_width() {
        let a = ElementSet::from_indices(3, [0, 2]);
        let b = ElementSet::from_indices(200, [0, 2]);
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn ops_match_btreeset(xs in prop::collection::btree_set(0usize..150, 0..40),
                              ys in prop::collection::btree_set(0usize..150, 0..40)) {
            let a = ElementSet::from_indices(150, xs.iter().copied());
            let b = ElementSet::from_indices(150, ys.iter().copied());
            prop_assert_eq!(a.to_vec(), xs.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(a.union(&b).to_vec(), xs.union(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.difference(&b).to_vec(), xs.difference(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersection(&b).to_vec(), xs.intersection(&ys).copied().collect::<Vec<_>>());
            prop_assert_eq!(a.intersects(&b), !xs.is_disjoint(&ys));
            prop_assert_eq!(a.is_subset(&b), xs.is_subset(&ys));
            let common: Vec<usize> = xs.intersection(&ys).copied().collect();
            prop_assert_eq!(a.sole_common(&b), if common.len() == 1 { Some(common[0]) } else { None });
            prop_assert_eq!(a.cmp(&b), xs.iter().cmp(ys.iter()));
        }
    }
}
