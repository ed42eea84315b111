use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest element label representable in an [`ElementSet`].
pub const MAX_LABEL: usize = 63;

/// A finite set of element labels in `1..=63`, stored as a bitmask.
///
/// Sets order lexicographically on their ascending element lists, so that
/// `{1,2} < {1,2,3} < {1,3} < {2}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits & !1)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, …, n}`.
    pub fn range(n: usize) -> Self {
        assert!(n <= MAX_LABEL);
        if n == 0 {
            return Self::EMPTY;
        }
        ElementSet((u64::MAX >> (64 - n)) << 1)
    }

    pub fn singleton(e: usize) -> Self {
        assert!(
            (1..=MAX_LABEL).contains(&e),
            "element label {e} out of range"
        );
        ElementSet(1 << e)
    }

    /// Builds a set, rejecting labels outside `1..=ground`.
    pub fn try_from_slice(elements: &[usize], ground: usize) -> Result<Self> {
        let mut s = Self::EMPTY;
        for &e in elements {
            if e == 0 || e > ground || e > MAX_LABEL {
                return Err(Error::IndexOutOfRange { element: e, ground });
            }
            s.insert(e);
        }
        Ok(s)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e <= MAX_LABEL && self.0 & (1 << e) != 0
    }

    pub fn insert(&mut self, e: usize) {
        *self = self.with(e);
    }

    pub fn remove(&mut self, e: usize) {
        *self = self.without(e);
    }

    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | Self::singleton(e).0)
    }

    pub fn without(self, e: usize) -> Self {
        if e > MAX_LABEL {
            return self;
        }
        ElementSet(self.0 & !(1 << e))
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self` with exactly `k` elements, in lexicographic order.
    pub fn subsets_of_size(self, k: usize) -> Vec<ElementSet> {
        let elems = self.to_vec();
        let mut out = Vec::new();
        if k > elems.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| elems[i]).collect());
            let Some(i) = (0..k).rev().find(|&i| idx[i] < elems.len() - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }

    /// All subsets of `self` (including ∅ and `self`), by increasing bitmask.
    pub fn all_subsets(self) -> impl Iterator<Item = ElementSet> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cur = sub;
            sub = sub.wrapping_sub(full) & full;
            done = sub == 0;
            Some(ElementSet(cur))
        })
    }
}

pub struct Iter(u64);

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

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        if let Some(&bad) = v.iter().find(|&&e| e == 0 || e > MAX_LABEL) {
            return Err(serde::de::Error::custom(format!(
                "element {bad} out of range 1..=63"
            )));
        }
        Ok(v.into_iter().collect())
    }
}

/// Shorthand for building a set from literal labels.
#[macro_export]
macro_rules! set {
    ($($e:expr),* $(,)?) => {
        $crate::matroid::ElementSet::from_iter([$($e as usize),*])
    };
}
