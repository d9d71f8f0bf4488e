use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

/// Largest supported ground set; subsets of `[n]` fit in one machine word.
pub const MAX_N: usize = 64;

/// A subset of the ground set, stored 0-indexed as a bit mask.
///
/// Displayed and serialized 1-indexed.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordSet(u64);

impl CoordSet {
    pub const EMPTY: CoordSet = CoordSet(0);

    pub fn from_bits(bits: u64) -> Self {
        CoordSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            CoordSet(u64::MAX)
        } else {
            CoordSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        CoordSet(1 << i)
    }

    /// Builds a set from 1-indexed element labels.
    pub fn from_one_indexed<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items.into_iter().map(|i| i - 1).collect()
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, other: CoordSet) -> CoordSet {
        CoordSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: CoordSet) -> CoordSet {
        CoordSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: CoordSet) -> CoordSet {
        CoordSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: CoordSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: CoordSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Ascending 0-indexed elements.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_one_indexed(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl IntoIterator for CoordSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl FromIterator<usize> for CoordSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = CoordSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CoordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl Serialize for CoordSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_indexed().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoordSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = items.iter().find(|&&i| i == 0 || i > MAX_N) {
            return Err(serde::de::Error::custom(format!(
                "coordinate {bad} outside [1, {MAX_N}]"
            )));
        }
        Ok(CoordSet::from_one_indexed(items))
    }
}
