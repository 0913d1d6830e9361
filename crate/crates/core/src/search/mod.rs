//! Exhaustive determination of `e(n, s)` at small `n`, the uniform analogue,
//! and the checks built on top of them.
//!
//! A largest family without `s` pairwise disjoint members can be taken
//! shifted. A shifted maximum family not containing `∅` is closed under
//! supersets, i.e. closed upwards under `prefix_le`; one containing `∅` is
//! `{∅}` plus a maximum such family for `s - 1`. The searches therefore run
//! over up-closed families of a [`lattice::Lattice`] and combine the two cases.

mod family_bb;
mod hitting;
pub(crate) mod lattice;
pub mod stability;
mod unrestricted;

use serde::Serialize;

use crate::bits::BitSet;
use crate::config::Config;
use crate::constructions::{Construction, ConstructionKind, ExtremalParams};
use crate::count::{binomial, BigCount};
use crate::error::{Error, Result};
use crate::family::{canonical_cmp, SetFamily, SetWord};
use crate::order::prefix_le;

use family_bb::FamilySearch;
use hitting::HitSearch;
use lattice::Lattice;

pub use stability::{
    layer_stability_check, main_theorem_check, sample_shifted_families, MainTheoremReport, Regime, StabilityReport,
    TheoremStatus,
};

/// Which search produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formulation {
    /// Lazily generated hitting constraints on the complement.
    HittingSet,
    /// Include/exclude branching on the family.
    FamilyBranch,
    /// Explicit hitting set over all `s`-matchings, no shiftedness assumed.
    Unrestricted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionSize {
    pub kind: ConstructionKind,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub size: BigCount,
}

/// A maximum family in compact form: its `prefix_le`-minimal nonempty members
/// generate the rest, plus `∅` when flagged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyRecord {
    pub size: usize,
    pub kinds: Vec<String>,
    pub contains_empty: bool,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub s: usize,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub e_value: BigCount,
    #[serde(rename = "extremal_families")]
    pub family_records: Vec<FamilyRecord>,
    #[serde(skip)]
    pub extremal_families: Vec<SetFamily>,
    pub families_truncated: bool,
    pub params: Option<ExtremalParams>,
    pub compared_constructions: Vec<ConstructionSize>,
    pub conjecture_holds: Option<bool>,
    pub extremal_kinds: Vec<String>,
    pub degenerate_ell: bool,
    pub vacuous: bool,
    pub formulation: Formulation,
    pub nodes: u64,
    /// Feasible families met during the search (not only maxima), for stability data.
    #[serde(skip)]
    pub visited_families: Vec<SetFamily>,
}

impl SearchReport {
    pub fn e_u64(&self) -> u64 {
        self.e_value.iter_u64_digits().next().unwrap_or(0)
    }
}

/// Four construction sizes when `n = ms + c` decomposes.
pub fn construction_sizes(params: &ExtremalParams) -> Vec<ConstructionSize> {
    ConstructionKind::ALL
        .iter()
        .map(|&kind| ConstructionSize { kind, size: Construction::new(kind, *params).size() })
        .collect()
}

fn kinds_of(family: &SetFamily, dense: &[(ConstructionKind, SetFamily)]) -> Vec<String> {
    let kinds: Vec<String> = dense.iter().filter(|(_, d)| d == family).map(|(k, _)| k.name().to_string()).collect();
    if kinds.is_empty() {
        vec!["other".to_string()]
    } else {
        kinds
    }
}

fn record(family: &SetFamily, dense: &[(ConstructionKind, SetFamily)]) -> FamilyRecord {
    let nonempty: Vec<SetWord> = family.iter().filter(|s| !s.is_empty()).collect();
    let mut generators: Vec<SetWord> =
        nonempty.iter().copied().filter(|&a| !nonempty.iter().any(|&b| b != a && prefix_le(b, a))).collect();
    generators.sort_by(canonical_cmp);
    FamilyRecord {
        size: family.len(),
        kinds: kinds_of(family, dense),
        contains_empty: family.contains(SetWord::EMPTY),
        generators: generators.into_iter().map(SetWord::elements).collect(),
    }
}

struct Maxima {
    value: usize,
    families: Vec<SetFamily>,
    truncated: bool,
    nodes: u64,
    visited: Vec<SetFamily>,
}

fn family_from_complement(lat: &Lattice, g: &BitSet) -> SetFamily {
    SetFamily::from_bits(lat.n, lat.to_mask_bits(&g.complement()))
}

fn family_from_members(lat: &Lattice, f: &BitSet) -> SetFamily {
    SetFamily::from_bits(lat.n, lat.to_mask_bits(f))
}

fn with_empty(f: &SetFamily) -> SetFamily {
    let mut bits = f.bits().clone();
    bits.insert(0);
    SetFamily::from_bits(f.n(), bits)
}

/// Largest construction size; with `ℓ = 0` the constructions may hold an
/// `s`-matching, so they give no bound there.
fn lower_bound(n: usize, s: usize) -> usize {
    ExtremalParams::decompose(n, s as u32)
        .filter(|p| !p.is_degenerate())
        .map(|p| {
            construction_sizes(&p)
                .iter()
                .map(|c| c.size.iter_u64_digits().next().unwrap_or(0) as usize)
                .max()
                .unwrap_or(0)
        })
        .unwrap_or(0)
}

/// Largest up-closed families with no `s`-matching and size at least `floor`.
fn upclosed_maxima(
    lat: &Lattice,
    s: usize,
    floor: usize,
    cfg: &Config,
    how: Formulation,
    leaf_cap: usize,
) -> Option<Maxima> {
    let total = lat.len();
    let n = lat.n;
    if s > n + 1 {
        unreachable!("vacuous case handled by the caller");
    }
    // Any up-closed family holding ∅ is all of 2^[n], which has an (n+1)-matching.
    let mut start = BitSet::new(total);
    start.insert(0);
    match how {
        Formulation::HittingSet => {
            let out = HitSearch::new(lat, s, total - floor.min(total), cfg.tie_cap).keep_leaves(leaf_cap).run(start);
            let best = out.best?;
            Some(Maxima {
                value: total - best,
                families: out.optimal.iter().map(|g| family_from_complement(lat, g)).collect(),
                truncated: out.ties_truncated,
                nodes: out.nodes,
                visited: out.leaves.iter().map(|g| family_from_complement(lat, g)).collect(),
            })
        }
        Formulation::FamilyBranch => {
            let out = FamilySearch::new(lat, s, floor, cfg.tie_cap).run(start, BitSet::new(total));
            let best = out.best?;
            Some(Maxima {
                value: best,
                families: out.optimal.iter().map(|f| family_from_members(lat, f)).collect(),
                truncated: out.ties_truncated,
                nodes: out.nodes,
                visited: Vec::new(),
            })
        }
        Formulation::Unrestricted => unreachable!(),
    }
}

/// Exact `e(n, s)` with all maximum shifted families (up to the tie cap).
pub fn e_exact(n: usize, s: usize, cfg: &Config) -> Result<SearchReport> {
    e_exact_with(n, s, cfg, Formulation::HittingSet)
}

pub fn e_exact_with(n: usize, s: usize, cfg: &Config, how: Formulation) -> Result<SearchReport> {
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    if s == 0 {
        return Err(Error::InvalidParams("s must be at least 1".into()));
    }
    cfg.check_guard(n)?;
    if how == Formulation::Unrestricted {
        return e_unrestricted(n, s, cfg);
    }
    let params = ExtremalParams::decompose(n, s as u32);
    let dense: Vec<(ConstructionKind, SetFamily)> = params
        .map(|p| {
            ConstructionKind::ALL
                .iter()
                .map(|&k| (k, Construction::new(k, p).densify().expect("n within guard")))
                .collect()
        })
        .unwrap_or_default();

    let (value, families, truncated, nodes, visited, vacuous) = if s == 1 {
        // even {∅} is a 1-matching
        (0, vec![SetFamily::empty(n)?], false, 0, Vec::new(), false)
    } else if s > n + 1 {
        (1usize << n, vec![SetFamily::power_set(n)?], false, 0, Vec::new(), true)
    } else {
        let lat = Lattice::full(n);
        let main = upclosed_maxima(&lat, s, lower_bound(n, s), cfg, how, 256)
            .ok_or_else(|| Error::Precondition("no family reached the construction lower bound".into()))?;
        let mut value = main.value;
        let mut families = main.families;
        let mut truncated = main.truncated;
        let mut nodes = main.nodes;
        // {∅} plus a family without an (s-1)-matching
        if s >= 2 {
            let alt_floor = value.saturating_sub(1).max(1);
            if let Some(alt) = upclosed_maxima(&lat, s - 1, alt_floor, cfg, how, 0) {
                nodes += alt.nodes;
                let alt_value = alt.value + 1;
                let lifted = alt.families.iter().map(with_empty);
                if alt_value > value {
                    value = alt_value;
                    families = lifted.collect();
                    truncated = alt.truncated;
                } else if alt_value == value {
                    families.extend(lifted);
                    truncated |= alt.truncated;
                }
            }
        }
        if families.len() > cfg.tie_cap {
            families.truncate(cfg.tie_cap);
            truncated = true;
        }
        (value, families, truncated, nodes, main.visited, false)
    };
    Ok(assemble(n, s, value, families, truncated, nodes, visited, vacuous, params, &dense, how))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    n: usize,
    s: usize,
    value: usize,
    mut families: Vec<SetFamily>,
    truncated: bool,
    nodes: u64,
    visited: Vec<SetFamily>,
    vacuous: bool,
    params: Option<ExtremalParams>,
    dense: &[(ConstructionKind, SetFamily)],
    how: Formulation,
) -> SearchReport {
    families.sort_by_key(|f| f.sorted_sets().into_iter().map(|s| s.elements()).collect::<Vec<_>>());
    let family_records: Vec<FamilyRecord> = families.iter().map(|f| record(f, dense)).collect();
    let mut extremal_kinds: Vec<String> = family_records.iter().flat_map(|r| r.kinds.iter().cloned()).collect();
    let order = |k: &String| ["P", "Pprime", "Q", "W", "other"].iter().position(|x| x == k);
    extremal_kinds.sort_by_key(order);
    extremal_kinds.dedup();
    let compared_constructions = params.as_ref().map(construction_sizes).unwrap_or_default();
    let e_value = BigCount::from(value);
    let conjecture_holds = params.map(|_| compared_constructions.iter().map(|c| &c.size).max() == Some(&e_value));
    SearchReport {
        n,
        s,
        e_value,
        family_records,
        extremal_families: families,
        families_truncated: truncated,
        params,
        compared_constructions,
        conjecture_holds,
        extremal_kinds,
        degenerate_ell: params.is_some_and(|p| p.is_degenerate()),
        vacuous,
        formulation: how,
        nodes,
        visited_families: visited,
    }
}

/// `e(n, s)` without assuming shiftedness: `2^n` minus a minimum hitting set
/// of all `s`-matchings of `2^[n]`. Only the value is reported.
pub fn e_unrestricted(n: usize, s: usize, cfg: &Config) -> Result<SearchReport> {
    if n > cfg.unrestricted_guard || n > 6 {
        return Err(Error::GuardExceeded { n, guard: cfg.unrestricted_guard.min(6) });
    }
    let sets: Vec<u64> = (0..1u64 << n).collect();
    let edges = unrestricted::disjoint_collections(&sets, s);
    let hs = unrestricted::min_hitting_set(edges).expect("edges are nonempty");
    let value = (1usize << n) - hs.size;
    let family = SetFamily::from_predicate(n, |a| hs.set >> a.mask() & 1 == 0)?;
    let params = ExtremalParams::decompose(n, s as u32);
    let dense: Vec<(ConstructionKind, SetFamily)> = params
        .map(|p| ConstructionKind::ALL.iter().map(|&k| (k, Construction::new(k, p).densify().unwrap())).collect())
        .unwrap_or_default();
    Ok(assemble(
        n,
        s,
        value,
        vec![family],
        true,
        hs.nodes,
        Vec::new(),
        s > n + 1,
        params,
        &dense,
        Formulation::Unrestricted,
    ))
}

/// `e(n, s)` by the requested formulation, value only.
pub fn e_value(n: usize, s: usize, cfg: &Config, how: Formulation) -> Result<usize> {
    let r = e_exact_with(n, s, cfg, how)?;
    Ok(r.e_u64() as usize)
}

/// Conjecture check at `n = ms + c`: `e(n, s)` against the four constructions.
pub fn conjecture_check(m: u32, c: u32, s: u32, cfg: &Config) -> Result<SearchReport> {
    let params = ExtremalParams::new(m, c, s)?;
    e_exact(params.n(), s as usize, cfg)
}

/// Result of the uniform search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmcReport {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub value: BigCount,
    pub nodes: u64,
    pub formulation: Formulation,
}

fn emc_checks(n: usize, k: usize, t: usize) -> Result<()> {
    if k == 0 || t == 0 {
        return Err(Error::InvalidParams("need k >= 1 and t >= 1".into()));
    }
    if k * t > n {
        return Err(Error::InvalidParams(format!("need k*t <= n, got k={k}, t={t}, n={n}")));
    }
    Ok(())
}

/// Largest `G ⊆ C([n], k)` with no `t` pairwise disjoint members.
pub fn uniform_emc_max(n: usize, k: usize, t: usize, cfg: &Config) -> Result<BigCount> {
    Ok(uniform_emc_report(n, k, t, cfg)?.value)
}

pub fn uniform_emc_report(n: usize, k: usize, t: usize, cfg: &Config) -> Result<EmcReport> {
    emc_checks(n, k, t)?;
    cfg.check_guard(n)?;
    let (value, nodes) = emc_search(n, k, t)?;
    Ok(EmcReport { n, k, t, value: BigCount::from(value), nodes, formulation: Formulation::HittingSet })
}

/// Shifted uniform search without the configured guard; callers keep `n` small.
pub(crate) fn emc_search(n: usize, k: usize, t: usize) -> Result<(usize, u64)> {
    emc_checks(n, k, t)?;
    if t == 1 {
        return Ok((0, 0));
    }
    let lat = Lattice::layer(n, k);
    let (n_, k_, t_) = (n as i64, k as i64, t as i64);
    // clique on [kt-1] and the family meeting [t-1] are both feasible
    let clique = binomial(k_ * t_ - 1, k_);
    let meets = binomial(n_, k_) - binomial(n_ - t_ + 1, k_);
    let floor = clique.max(meets).iter_u64_digits().next().unwrap_or(0) as usize;
    let out = HitSearch::new(&lat, t, lat.len() - floor, 1).run(BitSet::new(lat.len()));
    let best = out.best.ok_or_else(|| Error::Precondition("uniform search found nothing".into()))?;
    Ok((lat.len() - best, out.nodes))
}

/// Uniform maximum by explicit hitting set over all `t`-matchings (`C(n, k) <= 128`).
pub fn uniform_emc_unrestricted(n: usize, k: usize, t: usize) -> Result<BigCount> {
    emc_checks(n, k, t)?;
    let sets: Vec<u64> = crate::deletion::k_subsets(n, k).collect();
    if sets.len() > 128 {
        return Err(Error::GuardExceeded { n, guard: 8 });
    }
    let edges = unrestricted::disjoint_collections(&sets, t);
    let hs = unrestricted::min_hitting_set(edges).expect("edges are nonempty");
    Ok(BigCount::from(sets.len() - hs.size))
}
