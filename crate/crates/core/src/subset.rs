//! Finite subsets of the ground set `0..64` as bitmasks.

use std::cmp::Ordering;
use std::fmt;

/// Largest ground set a [`Subset`] can hold.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., 63}`.
///
/// Elements are 0-based internally; [`Display`](fmt::Display) prints them
/// 1-based. The order is lexicographic on the increasing element lists, so
/// `{0, 3} < {1, 2}` and a prefix sorts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    /// `{0, .., n-1}`
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, o: Subset) -> Self {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Self {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Self {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Number of elements of `self` strictly below `i`.
    pub fn rank_of(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    /// Elements as 1-based labels.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some((c.wrapping_sub(full)) & full) };
            Some(Subset(c))
        })
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset(iter.into_iter().fold(0, |b, i| b | 1 << i))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        let x = self.0 ^ other.0;
        if x == 0 {
            return Ordering::Equal;
        }
        // the set holding t is smaller unless the other one stops before t
        let t = x.trailing_zeros();
        let self_has = self.0 >> t & 1 == 1;
        let lacking = if self_has { other.0 } else { self.0 };
        let holder_is_less = t < 63 && lacking >> (t + 1) != 0;
        if self_has == holder_is_less {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
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

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[usize]) -> Subset {
        v.iter().copied().collect()
    }

    #[test]
    fn lex_order() {
        assert!(s(&[0, 3]) < s(&[1, 2]));
        assert!(s(&[0]) < s(&[0, 1]));
        assert!(Subset::EMPTY < s(&[5]));
        assert!(s(&[1, 2]) < s(&[1, 3]));
        assert!(s(&[1, 2, 9]) < s(&[1, 3]));
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(s(&[2, 3]).to_string(), "{3,4}");
    }

    #[test]
    fn all_subsets() {
        assert_eq!(s(&[1, 4, 6]).subsets().count(), 8);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    proptest! {
        #[test]
        fn order_agrees_with_vectors(a in 0u64..4096, b in 0u64..4096) {
            let (x, y) = (Subset::from_bits(a), Subset::from_bits(b));
            prop_assert_eq!(x.cmp(&y), x.to_vec().cmp(&y.to_vec()));
        }
    }
}
