//! Deletion number `d(F)`: the fewest ground elements whose removal leaves no
//! `ℓ`-matching among the `m`-element members.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{SetFamily, SetWord};
use crate::matching::{nu_bits, prefix_matching_search};
use crate::shift::is_shifted;

/// How candidate deletion sets are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeletionMode {
    /// Only prefixes `[d]`; exact for shifted families.
    Prefix,
    /// Every `X ⊆ [n]` of each size.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionResult {
    /// `d(F)`, or `budget + 1` when the budget ran out.
    pub d: usize,
    pub exceeds_budget: bool,
    #[serde(rename = "witness_X")]
    pub witness_x: Option<SetWord>,
    pub m: usize,
    pub ell: usize,
    pub nodes: u64,
    pub mode: DeletionMode,
}

/// Iterates all `k`-subsets of `[n]` as masks in increasing order.
pub(crate) fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << n;
    let mut cur = if k > n {
        limit
    } else if k == 0 {
        0
    } else {
        (1u64 << k) - 1
    };
    let mut done = k > n;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if cur == 0 {
            done = true;
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}

struct LayerQuery {
    n: usize,
    bits: crate::bits::BitSet,
    ell: usize,
    nodes: u64,
}

impl LayerQuery {
    fn new(f: &SetFamily, m: usize, ell: usize) -> Self {
        LayerQuery { n: f.n(), bits: f.layer(m).bits().clone(), ell, nodes: 0 }
    }

    /// `ν(F^(m) ∩ 2^{[n] \ X}) >= ℓ`.
    fn has_ell_matching_avoiding(&mut self, x: u64) -> bool {
        let mut sub = self.bits.clone();
        for a in self.bits.iter() {
            if a as u64 & x != 0 {
                sub.remove(a);
            }
        }
        let r = nu_bits(self.n, &sub, Some(self.ell));
        self.nodes += r.nodes;
        r.nu >= self.ell
    }
}

/// `d(F)` for the given `m` and `ℓ`, picking prefix mode for shifted families.
pub fn deletion_number(f: &SetFamily, m: usize, ell: usize, budget: Option<usize>) -> Result<DeletionResult> {
    let mode = if is_shifted(f) { DeletionMode::Prefix } else { DeletionMode::Exhaustive };
    deletion_number_with(f, m, ell, budget, mode)
}

/// `d(F)` with an explicit enumeration mode.
///
/// In a shifted family, relabelling `[n] \ X` onto `[d+1, n]` moves every
/// element up, so deleting `[d]` is never better than deleting another `d`-set.
pub fn deletion_number_with(
    f: &SetFamily,
    m: usize,
    ell: usize,
    budget: Option<usize>,
    mode: DeletionMode,
) -> Result<DeletionResult> {
    if ell < 1 {
        return Err(Error::InvalidParams("deletion number needs ℓ >= 1".into()));
    }
    if m < 1 {
        return Err(Error::InvalidParams("deletion number needs m >= 1".into()));
    }
    let n = f.n();
    let mut q = LayerQuery::new(f, m, ell);
    let max_d = budget.map_or(n, |b| b.min(n));
    for d in 0..=max_d {
        let found = match mode {
            DeletionMode::Prefix => {
                let x = SetWord::prefix(d).mask();
                (!q.has_ell_matching_avoiding(x)).then_some(x)
            }
            DeletionMode::Exhaustive => k_subsets(n, d).find(|&x| !q.has_ell_matching_avoiding(x)),
        };
        if let Some(x) = found {
            return Ok(DeletionResult {
                d,
                exceeds_budget: false,
                witness_x: Some(SetWord::from_mask(x)),
                m,
                ell,
                nodes: q.nodes,
                mode,
            });
        }
    }
    // Deleting all of [n] always succeeds, so only a budget stops the loop.
    Ok(DeletionResult { d: max_d + 1, exceeds_budget: true, witness_x: None, m, ell, nodes: q.nodes, mode })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

/// Outcome of checking the prefix-matching property of shifted families with `d(F) > d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionLemmaReport {
    pub d: usize,
    pub k: usize,
    pub m: usize,
    pub ell: usize,
    /// `d + mℓ`; the deletion sets live in this prefix.
    pub prefix: usize,
    pub deleted_size: usize,
    pub checked: usize,
    pub mode: CheckMode,
    pub seed: Option<u64>,
    pub counterexamples: Vec<SetWord>,
    pub holds: bool,
}

/// Prefix lengths above this are sampled rather than enumerated.
pub const EXHAUSTIVE_PREFIX_LIMIT: usize = 14;

/// For every `X ⊆ [d + mℓ]` with `|X| = d - km`, looks for an `(ℓ + k)`-matching
/// among `m`-sets of `F` inside `[d + mℓ] \ X`.
///
/// Precondition failures (`F` not shifted, `km > d`, `d(F) <= d`) are errors;
/// a missing matching is reported as a counterexample.
pub fn check_deletion_lemma(
    f: &SetFamily,
    d: usize,
    k: usize,
    m: usize,
    ell: usize,
    sample_size: Option<usize>,
    seed: u64,
) -> Result<DeletionLemmaReport> {
    if !is_shifted(f) {
        return Err(Error::Precondition("family is not shifted".into()));
    }
    if k * m > d {
        return Err(Error::Precondition(format!("need k <= d/m, got k={k}, d={d}, m={m}")));
    }
    let dn = deletion_number(f, m, ell, Some(d))?;
    if !dn.exceeds_budget {
        return Err(Error::Precondition(format!("d(F) = {} is not greater than {d}", dn.d)));
    }
    let prefix = (d + m * ell).min(f.n());
    let deleted_size = d - k * m;
    let target = ell + k;

    let exhaustive = prefix <= EXHAUSTIVE_PREFIX_LIMIT && sample_size.is_none();
    let candidates: Vec<u64> = if exhaustive {
        k_subsets(prefix, deleted_size).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..sample_size.unwrap_or(1000))
            .map(|_| sample(&mut rng, prefix, deleted_size.min(prefix)).iter().fold(0u64, |acc, i| acc | 1 << i))
            .collect()
    };
    let counterexamples: Vec<SetWord> = candidates
        .iter()
        .map(|&x| SetWord::from_mask(x))
        .filter(|&x| prefix_matching_search(f, m, target, x, prefix).is_none())
        .collect();
    Ok(DeletionLemmaReport {
        d,
        k,
        m,
        ell,
        prefix,
        deleted_size,
        checked: candidates.len(),
        mode: if exhaustive { CheckMode::Exhaustive } else { CheckMode::Sampled },
        seed: (!exhaustive).then_some(seed),
        holds: counterexamples.is_empty(),
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{Construction, ConstructionKind, ExtremalParams};

    fn densify(kind: ConstructionKind, m: u32, c: u32, s: u32) -> SetFamily {
        Construction::new(kind, ExtremalParams::new(m, c, s).unwrap()).densify().unwrap()
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(5, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(5, 2).count(), 10);
        assert_eq!(k_subsets(5, 5).collect::<Vec<_>>(), vec![31]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert!(k_subsets(6, 3).all(|x| x.count_ones() == 3 && x < 64));
    }

    #[test]
    fn zero_when_layer_has_no_ell_matching() {
        let f = SetFamily::from_predicate(6, |s| s.len() == 2 && s.contains(1)).unwrap();
        let r = deletion_number(&f, 2, 2, None).unwrap();
        assert_eq!(r.d, 0);
        assert_eq!(r.witness_x, Some(SetWord::EMPTY));
    }

    #[test]
    fn w_and_q_examples() {
        let w = densify(ConstructionKind::W, 2, 1, 3);
        assert_eq!(deletion_number(&w, 2, 2, None).unwrap().d, 2);
        assert_eq!(deletion_number_with(&w, 2, 2, None, DeletionMode::Exhaustive).unwrap().d, 2);
        let q = densify(ConstructionKind::Q, 2, 1, 3);
        assert_eq!(deletion_number(&q, 2, 2, None).unwrap().d, 1);
        assert_eq!(deletion_number_with(&q, 2, 2, None, DeletionMode::Exhaustive).unwrap().d, 1);
    }

    #[test]
    fn budget_and_errors() {
        let w = densify(ConstructionKind::W, 2, 1, 3);
        let r = deletion_number(&w, 2, 2, Some(1)).unwrap();
        assert!(r.exceeds_budget);
        assert_eq!(r.d, 2);
        assert!(deletion_number(&w, 2, 0, None).is_err());
    }

    #[test]
    fn lemma_examples() {
        let w = densify(ConstructionKind::W, 2, 1, 3);
        let r = check_deletion_lemma(&w, 1, 0, 2, 2, None, 0).unwrap();
        assert!(r.holds);
        assert_eq!((r.prefix, r.checked), (5, 5));
        // d - km = 0: only X = ∅
        let r = check_deletion_lemma(&w, 0, 0, 2, 2, None, 0).unwrap();
        assert_eq!(r.checked, 1);
        assert!(r.holds);
    }

    #[test]
    fn lemma_preconditions() {
        let w = densify(ConstructionKind::W, 2, 1, 3);
        assert!(matches!(check_deletion_lemma(&w, 2, 0, 2, 2, None, 0), Err(Error::Precondition(_))));
        assert!(matches!(check_deletion_lemma(&w, 1, 1, 2, 2, None, 0), Err(Error::Precondition(_))));
        let f = SetFamily::new(3, [SetWord::from_elements([2, 3]).unwrap()]).unwrap();
        assert!(matches!(check_deletion_lemma(&f, 0, 0, 2, 1, None, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn sampled_mode_is_seeded() {
        let w = densify(ConstructionKind::W, 2, 2, 4);
        let a = check_deletion_lemma(&w, 2, 1, 2, 2, Some(20), 7).unwrap();
        let b = check_deletion_lemma(&w, 2, 1, 2, 2, Some(20), 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.mode, CheckMode::Sampled);
        assert_eq!(a.seed, Some(7));
        assert!(a.holds);
    }
}
