//! Precomputed universes for the shifted searches.
//!
//! A universe is either all of `2^[n]` or a single layer `C([n], k)`. Inside it
//! we store, for each set, its up- and down-closure under `prefix_le`. A family
//! closed upwards in that order is shifted (and, in the full universe, also
//! closed under supersets); its complement is closed downwards.

use crate::bits::BitSet;
use crate::deletion::k_subsets;
use crate::family::SetWord;
use crate::order::prefix_le;

pub(crate) struct Lattice {
    pub n: usize,
    /// index -> mask
    pub sets: Vec<u64>,
    /// mask -> index, `u32::MAX` outside the universe
    pub index: Vec<u32>,
    pub up: Vec<BitSet>,
    pub down: Vec<BitSet>,
    /// Indices in a linear extension of `prefix_le`.
    pub linear: Vec<usize>,
    pub full: bool,
}

impl Lattice {
    pub fn full(n: usize) -> Self {
        Self::build(n, (0..1u64 << n).collect(), true)
    }

    pub fn layer(n: usize, k: usize) -> Self {
        Self::build(n, k_subsets(n, k).collect(), false)
    }

    fn build(n: usize, sets: Vec<u64>, full: bool) -> Self {
        let len = sets.len();
        let mut index = vec![u32::MAX; 1 << n];
        for (i, &m) in sets.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        let mut up = vec![BitSet::new(len); len];
        let mut down = vec![BitSet::new(len); len];
        for i in 0..len {
            for j in 0..len {
                if prefix_le(SetWord::from_mask(sets[i]), SetWord::from_mask(sets[j])) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        // The sum of prefix counts strictly increases along the order.
        let rank = |m: u64| (0..n).map(|j| (m & ((1u64 << (j + 1)) - 1)).count_ones()).sum::<u32>();
        let mut linear: Vec<usize> = (0..len).collect();
        linear.sort_by_key(|&i| (rank(sets[i]), sets[i]));
        Lattice { n, sets, index, up, down, linear, full }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    /// Membership bits over `2^[n]` for the family `{sets[i] : i ∈ chosen}`.
    pub fn to_mask_bits(&self, chosen: &BitSet) -> BitSet {
        if self.full {
            return chosen.clone();
        }
        let mut out = BitSet::new(1 << self.n);
        for i in chosen.iter() {
            out.insert(self.sets[i] as usize);
        }
        out
    }

    pub fn idx(&self, mask: u64) -> usize {
        let i = self.index[mask as usize];
        debug_assert!(i != u32::MAX);
        i as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures_are_consistent() {
        let lat = Lattice::full(4);
        for i in 0..lat.len() {
            assert!(lat.up[i].get(i) && lat.down[i].get(i));
            for j in lat.up[i].iter() {
                assert!(lat.up[j].is_subset(&lat.up[i]));
            }
        }
        // ∅ is below everything, [n] above everything
        assert_eq!(lat.up[0].count(), 16);
        assert_eq!(lat.down[15].count(), 16);
        let pos: Vec<usize> = {
            let mut p = vec![0; lat.len()];
            for (r, &i) in lat.linear.iter().enumerate() {
                p[i] = r;
            }
            p
        };
        for i in 0..lat.len() {
            for j in lat.up[i].iter() {
                assert!(i == j || pos[i] < pos[j]);
            }
        }
    }

    #[test]
    fn layer_universe() {
        let lat = Lattice::layer(5, 2);
        assert_eq!(lat.len(), 10);
        let i12 = lat.idx(0b11);
        assert_eq!(lat.up[i12].count(), 1);
        assert_eq!(lat.down[i12].count(), 10);
    }
}
