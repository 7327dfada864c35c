//! Bit-set subsets of a ground set `{0, .., n-1}`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

/// A finite set of element ids stored as a bit pattern.
///
/// Trailing zero words are trimmed, so equality and hashing do not depend on
/// the width of the ground set the subset came from. `Ord` compares the
/// ascending element lists lexicographically.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Subset {
    words: SmallVec<[u64; 2]>,
}

impl Subset {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = Subset::new();
        let whole = n / 64;
        s.words.resize(whole, u64::MAX);
        if !n.is_multiple_of(64) {
            s.words.push((1u64 << (n % 64)) - 1);
        }
        s
    }

    pub fn singleton(e: usize) -> Self {
        let mut s = Subset::new();
        s.insert(e);
        s
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut s = Subset::new();
        s.words.push(mask);
        s.trim();
        s
    }

    /// The bit pattern, when every element is below 64.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, e: usize) {
        let w = e / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (e % 64);
    }

    pub fn remove(&mut self, e: usize) {
        let w = e / 64;
        if w < self.words.len() {
            self.words[w] &= !(1 << (e % 64));
            self.trim();
        }
    }

    pub fn with(&self, e: usize) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn without(&self, e: usize) -> Self {
        let mut s = self.clone();
        s.remove(e);
        s
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.words
            .get(e / 64)
            .is_some_and(|w| w & (1 << (e % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut s = long.clone();
        for (a, b) in s.words.iter_mut().zip(&short.words) {
            *a |= b;
        }
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = Subset {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        s.trim();
        s
    }

    pub fn intersection_len(&self, other: &Subset) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// `{0, .., n-1}` minus this set.
    pub fn complement(&self, n: usize) -> Subset {
        Subset::full(n).difference(self)
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn last(&self) -> Option<usize> {
        let w = self.words.len().checked_sub(1)?;
        Some(w * 64 + 63 - self.words[w].leading_zeros() as usize)
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image under an element map; `map[e]` is the new id of `e`.
    pub fn map(&self, map: &[usize]) -> Subset {
        self.iter().map(|e| map[e]).collect()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a Subset {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Subset::new();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Vec::<usize>::deserialize(d)?.into_iter().collect())
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// All `k`-element subsets of `{0, .., n-1}` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Combinations {
    Combinations {
        n,
        idx: (0..k).collect(),
        done: k > n,
    }
}

pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let mut s = Subset::new();
        s.insert(3);
        s.insert(70);
        assert!(s.contains(70) && s.contains(3) && !s.contains(4));
        assert_eq!(s.len(), 2);
        assert_eq!(s.last(), Some(70));
        s.remove(70);
        assert_eq!(s, Subset::singleton(3));
        assert_eq!(Subset::full(65).len(), 65);
        assert_eq!(Subset::full(64).to_mask(), Some(u64::MAX));
        assert_eq!(Subset::full(0), Subset::new());
    }

    #[test]
    fn ordering_is_lexicographic_on_elements() {
        let a: Subset = [0, 1].into_iter().collect();
        let b: Subset = [0, 2].into_iter().collect();
        let c: Subset = [1, 2].into_iter().collect();
        assert!(a < b && b < c);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(6, 3).count(), 20);
        assert_eq!(combinations(4, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(2, 3).count(), 0);
        assert_eq!(combinations(3, 2).collect::<Vec<_>>(), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    proptest! {
        #[test]
        fn set_algebra(a in proptest::collection::btree_set(0usize..200, 0..30),
                       b in proptest::collection::btree_set(0usize..200, 0..30)) {
            let sa: Subset = a.iter().copied().collect();
            let sb: Subset = b.iter().copied().collect();
            prop_assert_eq!(sa.to_vec(), a.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.union(&sb).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection_len(&sb), a.intersection(&b).count());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
            prop_assert_eq!(sa.cmp(&sb), a.iter().cmp(b.iter()));
            prop_assert_eq!(sa.last(), a.iter().next_back().copied());
        }
    }
}
