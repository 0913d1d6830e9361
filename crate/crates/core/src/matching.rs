//! Matching number by branch-and-bound set packing, and weight certificates.
//!
//! A matching in `F` can always be traded for one made of `⊆`-minimal members
//! (shrinking sets keeps them disjoint and distinct unless one becomes `∅`),
//! so the solver packs minimal members only. `∅` is disjoint from everything
//! and is packed up front when present.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::bits::BitSet;
use crate::constructions::{Construction, WeightVector};
use crate::error::{Error, Result};
use crate::family::{canonical_cmp, SetFamily, SetWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatchingResult {
    pub nu: usize,
    pub witness: Vec<SetWord>,
    pub nodes: u64,
    /// The search stopped at the cap; `nu` is a lower bound.
    pub lower_bound_only: bool,
}

/// `⊆`-minimal members of the family given by `members` (indexed by mask).
pub(crate) fn minimal_members(n: usize, members: &BitSet) -> Vec<u64> {
    let size = members.count();
    let dense_cost = (1usize << n) * n.max(1);
    if size.saturating_mul(size) <= dense_cost {
        let sets: Vec<u64> = members.iter().map(|m| m as u64).collect();
        sets.iter().copied().filter(|&a| !sets.iter().any(|&b| b != a && b & !a == 0)).collect()
    } else {
        // below[A]: some member is a proper subset of A
        let mut below = BitSet::new(1 << n);
        for a in 1usize..(1 << n) {
            let mut rest = a;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                let sub = a ^ bit;
                if members.get(sub) || below.get(sub) {
                    below.insert(a);
                    break;
                }
            }
        }
        members.iter().filter(|&a| !below.get(a)).map(|a| a as u64).collect()
    }
}

/// Packing engine over a fixed list of nonempty, pairwise incomparable sets.
pub(crate) struct Packer {
    by_min: Vec<Vec<u64>>,
    min_size: u32,
    pub nodes: u64,
}

impl Packer {
    pub fn new(n: usize, sets: &[u64]) -> Self {
        let mut by_min = vec![Vec::new(); n];
        let mut min_size = u32::MAX;
        for &s in sets {
            debug_assert!(s != 0);
            by_min[s.trailing_zeros() as usize].push(s);
            min_size = min_size.min(s.count_ones());
        }
        for list in by_min.iter_mut() {
            list.sort_by_key(|s| (s.count_ones(), *s));
        }
        Packer { by_min, min_size, nodes: 0 }
    }

    /// Largest packing inside `ground`, stopping once `cap` sets are packed.
    pub fn max_packing(&mut self, ground: u64, cap: usize) -> Vec<u64> {
        let mut best = Vec::new();
        if cap == 0 || self.min_size == u32::MAX {
            return best;
        }
        let mut cur = Vec::new();
        self.search(ground, cap, &mut cur, &mut best);
        best
    }

    fn search(&mut self, remaining: u64, cap: usize, cur: &mut Vec<u64>, best: &mut Vec<u64>) -> bool {
        self.nodes += 1;
        if cur.len() > best.len() {
            *best = cur.clone();
            if best.len() >= cap {
                return true;
            }
        }
        if remaining == 0 || cur.len() + (remaining.count_ones() / self.min_size) as usize <= best.len() {
            return false;
        }
        let e = remaining.trailing_zeros() as usize;
        for i in 0..self.by_min[e].len() {
            let s = self.by_min[e][i];
            if s & !remaining == 0 {
                cur.push(s);
                let done = self.search(remaining & !s, cap, cur, best);
                cur.pop();
                if done {
                    return true;
                }
            }
        }
        self.search(remaining & !(1 << e), cap, cur, best)
    }
}

/// Matching number of the family given as a membership bitset over `2^[n]`.
pub(crate) fn nu_bits(n: usize, members: &BitSet, cap: Option<usize>) -> MatchingResult {
    let cap = cap.unwrap_or(usize::MAX);
    let mut witness = Vec::new();
    if cap == 0 {
        return MatchingResult { nu: 0, witness, nodes: 0, lower_bound_only: !members.is_empty() };
    }
    let mut nonempty = members.clone();
    if members.get(0) {
        witness.push(SetWord::EMPTY);
        nonempty.remove(0);
    }
    let minimal = minimal_members(n, &nonempty);
    let mut packer = Packer::new(n, &minimal);
    let ground = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let packed = packer.max_packing(ground, cap - witness.len());
    witness.extend(packed.into_iter().map(SetWord::from_mask));
    let nu = witness.len();
    MatchingResult { nu, witness, nodes: packer.nodes, lower_bound_only: nu >= cap && cap != usize::MAX }
}

/// `ν(F)`; with a cap the search may stop early and flag the value as a lower bound.
pub fn nu(f: &SetFamily, cap: Option<usize>) -> MatchingResult {
    nu_bits(f.n(), f.bits(), cap)
}

/// `s` pairwise disjoint members of `F`, or `None` when `ν(F) < s`.
pub fn has_matching_of_size(f: &SetFamily, s: usize) -> Option<Vec<SetWord>> {
    let r = nu(f, Some(s));
    (r.nu >= s).then(|| r.witness.into_iter().take(s).collect())
}

/// Independent witness check: distinct, pairwise disjoint members of `F`.
pub fn is_valid_matching(f: &SetFamily, witness: &[SetWord]) -> bool {
    witness.iter().all(|&a| f.contains(a))
        && witness.iter().enumerate().all(|(i, &a)| witness[i + 1..].iter().all(|&b| a != b && a.is_disjoint(b)))
}

/// A `t`-matching among the `m`-element members of `F` inside `[prefix] \ forbidden`.
///
/// For shifted `F` a `t`-matching avoiding `forbidden` exists anywhere in `[n]`
/// iff one exists inside `[|forbidden| + m·t]`; callers rely on that only for
/// shifted families.
pub fn prefix_matching_search(
    f: &SetFamily,
    m: usize,
    t: usize,
    forbidden: SetWord,
    prefix: usize,
) -> Option<Vec<SetWord>> {
    if t == 0 {
        return Some(Vec::new());
    }
    let ground = SetWord::prefix(prefix.min(f.n())).difference(forbidden);
    has_matching_of_size(&f.layer(m).restrict(ground), t)
}

/// Outcome of checking a fractional cover `x` against a family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateResult {
    pub accepted: bool,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub weight_sum: BigRational,
    pub violated_set: Option<Vec<u32>>,
}

fn check_len(x: &WeightVector, n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::WeightLength { got: x.len(), n });
    }
    Ok(())
}

/// Accepts iff `sum x_i < s` and every member weighs at least 1.
pub fn verify_weight_certificate(f: &SetFamily, x: &WeightVector, s: u32) -> Result<CertificateResult> {
    check_len(x, f.n())?;
    let weight_sum = x.total();
    let one = BigRational::from_integer(1.into());
    let violated = f.sorted_sets().into_iter().find(|&a| x.weight_of(a) < one).map(SetWord::elements);
    let total_ok = weight_sum < BigRational::from_integer(s.into());
    Ok(CertificateResult { accepted: total_ok && violated.is_none(), weight_sum, violated_set: violated })
}

/// Certificate check for a predicate-backed construction at any `n`.
///
/// Membership depends only on the head/tail counts `(a, b)`, so the lightest
/// member with given counts takes the `a` lightest head elements and the `b`
/// lightest tail elements. Checking one such set per accepted `(a, b)` covers
/// the whole family exactly.
pub fn verify_construction_certificate(k: &Construction, x: &WeightVector, s: u32) -> Result<CertificateResult> {
    let n = k.n();
    check_len(x, n)?;
    let h = k.head_len();
    let sorted_block = |lo: usize, hi: usize| {
        let mut idx: Vec<usize> = (lo..hi).collect();
        idx.sort_by(|&i, &j| x.weights()[i].cmp(&x.weights()[j]).then(i.cmp(&j)));
        let mut prefix = vec![BigRational::zero()];
        for &i in &idx {
            let next = prefix.last().unwrap() + &x.weights()[i];
            prefix.push(next);
        }
        (idx, prefix)
    };
    let (head_idx, head_sum) = sorted_block(0, h);
    let (tail_idx, tail_sum) = sorted_block(h, n);
    let one = BigRational::from_integer(1.into());
    let mut violated = None;
    'outer: for size in 0..=n {
        for a in size.saturating_sub(n - h)..=size.min(h) {
            let b = size - a;
            if k.accepts_counts(a, b) && &head_sum[a] + &tail_sum[b] < one {
                let mut elems: Vec<u32> = head_idx[..a].iter().chain(&tail_idx[..b]).map(|&i| i as u32 + 1).collect();
                elems.sort_unstable();
                violated = Some(elems);
                break 'outer;
            }
        }
    }
    let weight_sum = x.total();
    let total_ok = weight_sum < BigRational::from_integer(s.into());
    Ok(CertificateResult { accepted: total_ok && violated.is_none(), weight_sum, violated_set: violated })
}

/// Members sorted canonically, for stable witness output.
pub fn canonical_witness(mut w: Vec<SetWord>) -> Vec<SetWord> {
    w.sort_by(canonical_cmp);
    w
}
