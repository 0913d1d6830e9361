//! Minimum down-closed complement hitting every `s`-matching, generated lazily.
//!
//! The complement `G` of a shifted, up-closed family must contain a member of
//! every `s`-matching of the universe. At each node we ask the packing solver
//! for an `s`-matching avoiding `G`; if there is none, `G` is feasible.
//! Otherwise some block must join `G` (with its down-closure), and we branch
//! on the blocks. Sibling `i` additionally forces blocks `0..i` into the
//! family, so the branches partition the solution space and every optimal `G`
//! is reached exactly once.

use crate::bits::BitSet;
use crate::matching::nu_bits;

use super::lattice::Lattice;

pub(crate) struct HitOutcome {
    /// Smallest feasible complement size found within the bound, if any.
    pub best: Option<usize>,
    /// Complements (as universe index sets) of size `best`.
    pub optimal: Vec<BitSet>,
    pub ties_truncated: bool,
    /// Every feasible leaf met during the search, up to `leaf_cap`.
    pub leaves: Vec<BitSet>,
    pub nodes: u64,
}

pub(crate) struct HitSearch<'a> {
    lat: &'a Lattice,
    s: usize,
    /// Largest complement still of interest.
    bound: usize,
    tie_cap: usize,
    leaf_cap: usize,
    extend_blocks: bool,
    out: HitOutcome,
}

impl<'a> HitSearch<'a> {
    /// `bound` is the largest complement size worth reporting (ties included).
    pub fn new(lat: &'a Lattice, s: usize, bound: usize, tie_cap: usize) -> Self {
        HitSearch {
            lat,
            s,
            bound,
            tie_cap,
            leaf_cap: 0,
            extend_blocks: lat.full,
            out: HitOutcome { best: None, optimal: Vec::new(), ties_truncated: false, leaves: Vec::new(), nodes: 0 },
        }
    }

    pub fn keep_leaves(mut self, cap: usize) -> Self {
        self.leaf_cap = cap;
        self
    }

    pub fn run(mut self, start: BitSet) -> HitOutcome {
        let forced = BitSet::new(self.lat.len());
        if start.count() <= self.bound {
            self.node(&start, &forced);
        }
        self.out
    }

    fn record(&mut self, g: &BitSet) {
        let size = g.count();
        if self.out.leaves.len() < self.leaf_cap {
            self.out.leaves.push(g.clone());
        }
        match self.out.best {
            Some(b) if size > b => {}
            Some(b) if size == b => {
                if self.out.optimal.len() < self.tie_cap {
                    self.out.optimal.push(g.clone());
                } else {
                    // nothing more to collect at this size
                    self.out.ties_truncated = true;
                    self.bound = b - 1;
                }
            }
            _ => {
                self.out.best = Some(size);
                self.bound = size;
                self.out.optimal = vec![g.clone()];
                self.out.ties_truncated = false;
            }
        }
    }

    fn node(&mut self, g: &BitSet, forced: &BitSet) {
        self.out.nodes += 1;
        let lat = self.lat;
        let family = lat.to_mask_bits(&g.complement());
        let r = nu_bits(lat.n, &family, Some(self.s));
        if r.nu < self.s {
            self.record(g);
            return;
        }
        if self.s == 2 && self.lat.full && g.count() + self.complementary_pairs(g) > self.bound {
            return;
        }
        let mut blocks: Vec<u64> = r.witness.iter().map(|w| w.mask()).collect();
        if self.extend_blocks {
            self.extend(&mut blocks, g);
        }
        let mut options: Vec<(usize, usize)> = blocks
            .iter()
            .map(|&b| {
                let i = lat.idx(b);
                (lat.down[i].count_minus(g), i)
            })
            .collect();
        options.sort_unstable();
        let size = g.count();
        let mut forced = forced.clone();
        for (cost, i) in options {
            if size + cost > self.bound {
                break;
            }
            if forced.get(i) {
                continue;
            }
            let mut next = g.clone();
            next.union_with(&lat.down[i]);
            self.node(&next, &forced);
            forced.union_with(&lat.up[i]);
            if nu_bits(lat.n, &lat.to_mask_bits(&forced), Some(self.s)).nu >= self.s {
                break;
            }
        }
    }

    /// Pairs `{A, [n] \ A}` both outside `G`: each is a 2-matching and they
    /// share no sets, so `G` still needs one member from every pair.
    fn complementary_pairs(&self, g: &BitSet) -> usize {
        let all = (1u64 << self.lat.n) - 1;
        (0..1u64 << (self.lat.n - 1)).filter(|&a| !g.get(self.lat.idx(a)) && !g.get(self.lat.idx(all ^ a))).count()
    }

    /// Grows the witness to a partition of `[n]`: leftover elements go to the
    /// nonempty block whose down-closure is currently cheapest, which raises
    /// the smallest branch cost.
    fn extend(&self, blocks: &mut [u64], g: &BitSet) {
        let all = (1u64 << self.lat.n) - 1;
        let used = blocks.iter().fold(0u64, |a, b| a | b);
        let leftover = all & !used;
        if leftover == 0 {
            return;
        }
        let target = blocks
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .min_by_key(|(_, &b)| self.lat.down[self.lat.idx(b)].count_minus(g))
            .map(|(i, _)| i);
        if let Some(i) = target {
            blocks[i] |= leftover;
        }
    }
}
