//! Subsets of `[n]` and dense families over the full power set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitSet;
use crate::count::{binomial, BigCount};
use crate::error::{Error, Result};

/// Largest ground set that can be materialised densely (`2^24` membership bits, 2 MiB).
pub const MAX_DENSE_N: usize = 24;

/// A subset of `[n]`; element `i` is stored in bit `i - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", try_from = "Vec<u32>")]
pub struct SetWord(u64);

impl SetWord {
    pub const EMPTY: SetWord = SetWord(0);

    #[inline]
    pub const fn from_mask(mask: u64) -> Self {
        SetWord(mask)
    }

    /// Builds a set from 1-based elements. Elements above 64 are rejected.
    pub fn from_elements<I: IntoIterator<Item = u32>>(elems: I) -> Result<Self> {
        let mut mask = 0u64;
        for e in elems {
            if e == 0 || e > 64 {
                return Err(Error::ElementOutOfRange { element: e, n: 64 });
            }
            mask |= 1 << (e - 1);
        }
        Ok(SetWord(mask))
    }

    /// The prefix `[k]`.
    pub fn prefix(k: usize) -> Self {
        if k >= 64 {
            SetWord(u64::MAX)
        } else {
            SetWord((1u64 << k) - 1)
        }
    }

    #[inline]
    pub const fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, element: u32) -> bool {
        element >= 1 && element <= 64 && self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub const fn is_disjoint(self, other: SetWord) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub const fn is_subset(self, other: SetWord) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn union(self, other: SetWord) -> SetWord {
        SetWord(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: SetWord) -> SetWord {
        SetWord(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: SetWord) -> SetWord {
        SetWord(self.0 & !other.0)
    }

    /// Largest element, or 0 for the empty set.
    pub const fn max_element(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Elements in increasing order, 1-based.
    pub fn elements(self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let tz = rest.trailing_zeros();
            rest &= rest - 1;
            Some(tz + 1)
        })
    }

    /// Fits inside `[n]`.
    pub fn within(self, n: usize) -> bool {
        self.max_element() as usize <= n
    }
}

impl From<SetWord> for Vec<u32> {
    fn from(s: SetWord) -> Self {
        s.elements()
    }
}

impl TryFrom<Vec<u32>> for SetWord {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        SetWord::from_elements(v)
    }
}

impl fmt::Debug for SetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for SetWord {
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

/// Canonical listing order: by size, then lexicographically by elements.
pub fn canonical_cmp(a: &SetWord, b: &SetWord) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.elements().cmp(&b.elements()))
}

/// A family `F ⊆ 2^[n]` stored as a membership bit per subset.
///
/// Values are immutable once built; every operation returns a new family.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    members: BitSet,
    layers: Vec<u64>,
}

impl SetFamily {
    fn check_n(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        if n > MAX_DENSE_N {
            return Err(Error::DenseLimit { n, limit: MAX_DENSE_N });
        }
        Ok(())
    }

    /// Family containing exactly the given sets; duplicates collapse.
    pub fn new<I: IntoIterator<Item = SetWord>>(n: usize, sets: I) -> Result<Self> {
        Self::check_n(n)?;
        let mut members = BitSet::new(1 << n);
        for s in sets {
            if !s.within(n) {
                return Err(Error::ElementOutOfRange { element: s.max_element(), n });
            }
            members.insert(s.mask() as usize);
        }
        Ok(Self::from_bits(n, members))
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(Self::from_bits(n, BitSet::new(1 << n)))
    }

    /// The full power set `2^[n]`.
    pub fn power_set(n: usize) -> Result<Self> {
        Self::check_n(n)?;
        Ok(Self::from_bits(n, BitSet::full(1 << n)))
    }

    pub fn from_predicate(n: usize, mut pred: impl FnMut(SetWord) -> bool) -> Result<Self> {
        Self::check_n(n)?;
        let mut members = BitSet::new(1 << n);
        for mask in 0..(1u64 << n) {
            if pred(SetWord(mask)) {
                members.insert(mask as usize);
            }
        }
        Ok(Self::from_bits(n, members))
    }

    /// `members` is indexed by subset mask and must have length `2^n`.
    pub(crate) fn from_bits(n: usize, members: BitSet) -> Self {
        debug_assert_eq!(members.len(), 1 << n);
        let mut layers = vec![0u64; n + 1];
        for m in members.iter() {
            layers[m.count_ones() as usize] += 1;
        }
        SetFamily { n, members, layers }
    }

    pub(crate) fn bits(&self) -> &BitSet {
        &self.members
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.layers.iter().sum::<u64>() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn contains(&self, s: SetWord) -> bool {
        s.within(self.n) && self.members.get(s.mask() as usize)
    }

    /// Members in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = SetWord> + '_ {
        self.members.iter().map(|m| SetWord(m as u64))
    }

    /// Members in canonical order (size, then lexicographic).
    pub fn sorted_sets(&self) -> Vec<SetWord> {
        let mut v: Vec<SetWord> = self.iter().collect();
        v.sort_by(canonical_cmp);
        v
    }

    /// `|F^(i)|` for `i = 0..=n`.
    pub fn layer_sizes(&self) -> &[u64] {
        &self.layers
    }

    /// The subfamily `F^(k)` of `k`-element members.
    pub fn layer(&self, k: usize) -> SetFamily {
        let mut bits = BitSet::new(1 << self.n);
        for m in self.members.iter() {
            if m.count_ones() as usize == k {
                bits.insert(m);
            }
        }
        SetFamily::from_bits(self.n, bits)
    }

    /// Members contained in `ground`.
    pub fn restrict(&self, ground: SetWord) -> SetFamily {
        let mut bits = BitSet::new(1 << self.n);
        for m in self.members.iter() {
            if (m as u64) & !ground.mask() == 0 {
                bits.insert(m);
            }
        }
        SetFamily::from_bits(self.n, bits)
    }

    /// `2^[n] \ F`.
    pub fn complement(&self) -> SetFamily {
        SetFamily::from_bits(self.n, self.members.complement())
    }

    pub fn union(&self, other: &SetFamily) -> Result<SetFamily> {
        self.same_ground(other)?;
        let mut bits = self.members.clone();
        bits.union_with(&other.members);
        Ok(SetFamily::from_bits(self.n, bits))
    }

    pub fn intersection(&self, other: &SetFamily) -> Result<SetFamily> {
        self.same_ground(other)?;
        let mut bits = self.members.clone();
        bits.intersect_with(&other.members);
        Ok(SetFamily::from_bits(self.n, bits))
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.n == other.n && self.members.is_subset(&other.members)
    }

    fn same_ground(&self, other: &SetFamily) -> Result<()> {
        if self.n != other.n {
            return Err(Error::GroundMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn layer_profile(&self) -> LayerProfile {
        let deficits =
            (0..=self.n).map(|i| binomial(self.n as i64, i as i64) - BigCount::from(self.layers[i])).collect();
        LayerProfile { sizes: self.layers.clone(), deficits }
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily(n={}, ", self.n)?;
        f.debug_set().entries(self.sorted_sets()).finish()?;
        write!(f, ")")
    }
}

/// Layer sizes `|F^(i)|` and deficits `y_F(i) = C(n, i) - |F^(i)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LayerProfile {
    pub sizes: Vec<u64>,
    #[serde(serialize_with = "crate::report::ser_counts")]
    pub deficits: Vec<BigCount>,
}

impl LayerProfile {
    /// `y_F(i)`, zero outside `0..=n`.
    pub fn deficit(&self, i: usize) -> BigCount {
        self.deficits.get(i).cloned().unwrap_or_default()
    }

    pub fn size(&self, i: usize) -> u64 {
        self.sizes.get(i).copied().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(e: &[u32]) -> SetWord {
        SetWord::from_elements(e.iter().copied()).unwrap()
    }

    #[test]
    fn make_family_examples() {
        assert_eq!(SetFamily::new(3, []).unwrap().len(), 0);
        assert_eq!(SetFamily::new(3, [sw(&[]), sw(&[1]), sw(&[1, 2])]).unwrap().len(), 3);
        assert_eq!(SetFamily::new(2, [sw(&[1]), sw(&[1]), sw(&[2])]).unwrap().len(), 2);
    }

    #[test]
    fn make_family_errors() {
        assert_eq!(SetFamily::new(2, [sw(&[3])]), Err(Error::ElementOutOfRange { element: 3, n: 2 }));
        assert_eq!(SetFamily::empty(25), Err(Error::DenseLimit { n: 25, limit: 24 }));
        assert_eq!(SetFamily::empty(0), Err(Error::EmptyGround));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(SetFamily::empty(3).unwrap().complement().len(), 8);
        assert!(SetFamily::power_set(3).unwrap().complement().is_empty());
        let c = SetFamily::new(2, [SetWord::EMPTY]).unwrap().complement();
        assert_eq!(c.sorted_sets(), vec![sw(&[1]), sw(&[2]), sw(&[1, 2])]);
    }

    #[test]
    fn layer_profile_examples() {
        let p = SetFamily::power_set(3).unwrap().layer_profile();
        assert!(p.deficits.iter().all(|d| *d == BigCount::from(0u32)));

        let p = SetFamily::new(3, [sw(&[1]), sw(&[2])]).unwrap().layer_profile();
        assert_eq!(p.size(1), 2);
        assert_eq!(p.deficit(1), BigCount::from(1u32));

        let f = SetFamily::from_predicate(4, |s| s.len() >= 2).unwrap();
        let p = f.layer_profile();
        assert_eq!(p.deficit(0), BigCount::from(1u32));
        assert_eq!(p.deficit(1), BigCount::from(4u32));
        assert_eq!(p.deficit(2), BigCount::from(0u32));
    }

    #[test]
    fn setword_basics() {
        let s = sw(&[1, 3, 5]);
        assert_eq!(s.elements(), vec![1, 3, 5]);
        assert_eq!(s.max_element(), 5);
        assert!(s.contains(3) && !s.contains(2) && !s.contains(0));
        assert!(s.within(5) && !s.within(4));
        assert_eq!(format!("{s}"), "{1,3,5}");
        assert_eq!(format!("{}", SetWord::EMPTY), "{}");
        assert!(SetWord::from_elements([0]).is_err());
        assert_eq!(SetWord::prefix(3), sw(&[1, 2, 3]));
    }
}
