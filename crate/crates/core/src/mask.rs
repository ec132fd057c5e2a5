//! Subsets of a small ground set packed into a 16-bit word.

use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Not, Sub};

/// Largest supported ground-set size.
pub const MAX_ELEMENTS: usize = 15;

/// A subset of `{0, .., n-1}`; bit `i` is set iff element `i` belongs to it.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SubsetMask(pub u16);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    /// The whole ground set of size `n`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        SubsetMask(((1u32 << n) - 1) as u16)
    }

    #[inline]
    pub fn singleton(e: usize) -> Self {
        SubsetMask(1 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements.into_iter().fold(SubsetMask::EMPTY, |acc, e| acc | SubsetMask::singleton(e))
    }

    /// Parses the digit shorthand used in lattice drawings, e.g. `"013"` for `{0,1,3}`.
    /// Hex digits `a`..`f` name elements 10..15.
    pub fn parse_digits(s: &str) -> Option<Self> {
        let mut m = SubsetMask::EMPTY;
        for c in s.chars() {
            let e = c.to_digit(16)? as usize;
            if e >= MAX_ELEMENTS {
                return None;
            }
            m |= SubsetMask::singleton(e);
        }
        Some(m)
    }

    #[inline]
    pub fn bits(self) -> u16 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
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
    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        SubsetMask(self.0 | 1 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        SubsetMask(self.0 & !(1 << e))
    }

    /// Complement relative to a ground set of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Removes element `e` and shifts the higher elements down by one.
    #[inline]
    pub fn squeeze(self, e: usize) -> Self {
        let low = self.0 & ((1u16 << e) - 1);
        let high = (self.0 >> (e + 1)) << e;
        SubsetMask(low | high)
    }

    /// Inverse of [`squeeze`](Self::squeeze): opens a gap at position `e` (left empty).
    #[inline]
    pub fn expand(self, e: usize) -> Self {
        let low = self.0 & ((1u16 << e) - 1);
        let high = ((self.0 as u32 >> e) << (e + 1)) as u16;
        SubsetMask(low | high)
    }

    /// Image under the element map `perm` (element `i` goes to `perm[i]`).
    #[inline]
    pub fn permute(self, perm: &[u8]) -> Self {
        let mut out = 0u16;
        let mut bits = self.0;
        while bits != 0 {
            let e = bits.trailing_zeros() as usize;
            out |= 1 << perm[e];
            bits &= bits - 1;
        }
        SubsetMask(out)
    }

    /// Lexicographic order on the sorted element tuples of two sets of equal size.
    #[inline]
    pub fn cmp_lex(self, other: SubsetMask) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let d = self.0 ^ other.0;
        if d == 0 {
            Ordering::Equal
        } else if self.0 & d & d.wrapping_neg() != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Digit shorthand (`{0,1,3}` -> `"013"`), hex digits beyond 9.
    pub fn to_digits(self) -> String {
        self.iter().map(|e| std::char::from_digit(e as u32, 16).unwrap()).collect()
    }
}

impl fmt::Debug for SubsetMask {
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

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Iterator over the elements of a [`SubsetMask`] in increasing order.
#[derive(Clone, Debug)]
pub struct Elements(u16);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elements {}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitor(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitOrAssign for SubsetMask {
    #[inline]
    fn bitor_assign(&mut self, rhs: SubsetMask) {
        self.0 |= rhs.0;
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitand(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitAndAssign for SubsetMask {
    #[inline]
    fn bitand_assign(&mut self, rhs: SubsetMask) {
        self.0 &= rhs.0;
    }
}

impl BitXor for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn bitxor(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 ^ rhs.0)
    }
}

impl Sub for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn sub(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !rhs.0)
    }
}

impl Not for SubsetMask {
    type Output = SubsetMask;
    #[inline]
    fn not(self) -> SubsetMask {
        SubsetMask(!self.0)
    }
}

/// Exact binomial coefficient; `n` is at most a few dozen here.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// All `k`-subsets of `{0..n-1}` in increasing numeric order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = SubsetMask> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == k).map(|m| SubsetMask(m as u16))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squeeze_expand_round_trip() {
        for m in 0u16..1 << 10 {
            for e in 0..10 {
                let s = SubsetMask(m);
                if !s.contains(e) {
                    assert_eq!(s.squeeze(e).expand(e), s);
                }
                assert_eq!(s.expand(e).squeeze(e), s);
            }
        }
    }

    #[test]
    fn lex_order_matches_sorted_tuples() {
        let subsets: Vec<SubsetMask> = k_subsets(7, 3).collect();
        for &a in &subsets {
            for &b in &subsets {
                let ta: Vec<usize> = a.iter().collect();
                let tb: Vec<usize> = b.iter().collect();
                assert_eq!(a.cmp_lex(b), ta.cmp(&tb));
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(15, 7), 6435);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn digits() {
        let m = SubsetMask::parse_digits("2356").unwrap();
        assert_eq!(m, SubsetMask::from_elements([2, 3, 5, 6]));
        assert_eq!(m.to_digits(), "2356");
        assert_eq!(format!("{m:?}"), "{2,3,5,6}");
    }
}
