//! Fixed-width element subsets.
//!
//! Ground sets are capped at [`MAX_ELEMENTS`] elements so that every subset
//! fits in a single `u128`. All Coxeter matroids handled here (E_8 has 120
//! elements) stay below the cap.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const MAX_ELEMENTS: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set too large");
        if n == MAX_ELEMENTS {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        ElementSet(1u128 << e)
    }

    pub fn pair(a: usize, b: usize) -> Self {
        ElementSet((1u128 << a) | (1u128 << b))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && (self.0 >> e) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !(1u128 << e);
    }

    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | (1u128 << e))
    }

    pub fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1u128 << e))
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted element lists.
    pub fn lex_cmp(self, other: ElementSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Image under an element map given as `map[old] = new`.
    pub fn map(self, map: &[usize]) -> ElementSet {
        self.iter().map(|e| map[e]).collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl<'a> FromIterator<&'a usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    fn bitxor(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 ^ rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: ElementSet) -> ElementSet {
        ElementSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&e) = v.iter().find(|&&e| e >= MAX_ELEMENTS) {
            return Err(serde::de::Error::custom(format!("element index {e} exceeds {MAX_ELEMENTS}")));
        }
        Ok(v.into_iter().collect())
    }
}

/// Iterates over all `k`-subsets of `universe` in lexicographic order.
pub fn subsets_of_size(universe: ElementSet, k: usize) -> impl Iterator<Item = ElementSet> {
    let elems = universe.to_vec();
    let n = elems.len();
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out: ElementSet = idx.iter().map(|&i| elems[i]).collect();
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s: ElementSet = [1, 3, 127].iter().collect();
        assert_eq!(s.len(), 3);
        assert!(s.contains(127));
        assert_eq!(s.min(), Some(1));
        assert_eq!(s.max(), Some(127));
        assert_eq!(s.without(3).to_vec(), vec![1, 127]);
        assert_eq!(ElementSet::full(128).len(), 128);
        assert!(ElementSet::pair(1, 3).is_subset(s));
    }

    #[test]
    fn lex_order_is_on_sorted_lists() {
        let a: ElementSet = [1, 2].iter().collect();
        let b: ElementSet = [1, 2, 5].iter().collect();
        let c: ElementSet = [1, 2, 7].iter().collect();
        assert_eq!(a.lex_cmp(b), Ordering::Less);
        assert_eq!(b.lex_cmp(c), Ordering::Less);
        assert_eq!(c.lex_cmp(ElementSet::singleton(2)), Ordering::Less);
    }

    #[test]
    fn subset_enumeration_counts() {
        let u = ElementSet::full(15);
        assert_eq!(subsets_of_size(u, 3).count(), 455);
        assert_eq!(subsets_of_size(u, 0).count(), 1);
        assert_eq!(subsets_of_size(ElementSet::full(2), 3).count(), 0);
        let odd: ElementSet = [1, 3, 5, 7].iter().collect();
        let all: Vec<_> = subsets_of_size(odd, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0].to_vec(), vec![1, 3]);
        assert_eq!(all[5].to_vec(), vec![5, 7]);
    }
}
