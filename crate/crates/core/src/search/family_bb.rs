//! Include/exclude branch-and-bound over shifted up-closed families.
//!
//! The undecided set branched on is the first one in a fixed linear
//! extension, i.e. a minimal undecided set. Including it forces its
//! up-closure into the family; excluding it forces its down-closure out.
//! Nodes die when the forced part already holds an `s`-matching or when
//! everything not excluded cannot beat the incumbent. When everything not
//! excluded is itself free of `s`-matchings it is the best family below the node.

use crate::bits::BitSet;
use crate::matching::nu_bits;

use super::lattice::Lattice;

pub(crate) struct FamilyOutcome {
    pub best: Option<usize>,
    /// Optimal families as universe index sets.
    pub optimal: Vec<BitSet>,
    pub ties_truncated: bool,
    pub nodes: u64,
}

pub(crate) struct FamilySearch<'a> {
    lat: &'a Lattice,
    s: usize,
    /// Smallest family size still of interest.
    floor: usize,
    tie_cap: usize,
    out: FamilyOutcome,
}

impl<'a> FamilySearch<'a> {
    pub fn new(lat: &'a Lattice, s: usize, floor: usize, tie_cap: usize) -> Self {
        FamilySearch {
            lat,
            s,
            floor,
            tie_cap,
            out: FamilyOutcome { best: None, optimal: Vec::new(), ties_truncated: false, nodes: 0 },
        }
    }

    /// `excluded` is down-closed, `included` up-closed.
    pub fn run(mut self, excluded: BitSet, included: BitSet) -> FamilyOutcome {
        self.node(excluded, included);
        self.out
    }

    fn has_s_matching(&self, family: &BitSet) -> bool {
        nu_bits(self.lat.n, &self.lat.to_mask_bits(family), Some(self.s)).nu >= self.s
    }

    fn record(&mut self, f: BitSet) {
        let size = f.count();
        match self.out.best {
            Some(b) if size < b => {}
            Some(b) if size == b => {
                if self.out.optimal.len() < self.tie_cap {
                    self.out.optimal.push(f);
                } else {
                    self.out.ties_truncated = true;
                }
            }
            _ => {
                self.out.best = Some(size);
                self.floor = size;
                self.out.optimal = vec![f];
                self.out.ties_truncated = false;
            }
        }
    }

    fn node(&mut self, excluded: BitSet, included: BitSet) {
        self.out.nodes += 1;
        let optimistic = excluded.complement();
        if optimistic.count() < self.floor || self.has_s_matching(&included) {
            return;
        }
        if !self.has_s_matching(&optimistic) {
            self.record(optimistic);
            return;
        }
        let lat = self.lat;
        let pick = lat.linear.iter().copied().find(|&i| !excluded.get(i) && !included.get(i));
        let Some(a) = pick else {
            // Everything decided yet the family is the optimistic one, already handled.
            return;
        };
        let mut inc = included.clone();
        inc.union_with(&lat.up[a]);
        if !inc.intersects(&excluded) {
            self.node(excluded.clone(), inc);
        }
        let mut exc = excluded;
        exc.union_with(&lat.down[a]);
        if !exc.intersects(&included) {
            self.node(exc, included);
        }
    }
}
