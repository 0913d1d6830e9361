//! Exact, slack-free consequences of the layer-stability argument, and the
//! desk-scale check of which shifted families are maximum.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{construction_sizes, e_exact, emc_search, ConstructionSize};
use crate::config::Config;
use crate::constructions::{Construction, ConstructionKind, ExtremalParams};
use crate::count::{binomial, BigCount};
use crate::deletion::deletion_number;
use crate::error::{Error, Result};
use crate::family::{SetFamily, SetWord};
use crate::matching::nu;
use crate::shift::{is_shifted, shift_closure};

/// Where `d(F)` sits relative to `(m-1)c` and `mc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `d < (m-1)c`
    Below,
    /// `d = (m-1)c`
    Critical,
    /// `(m-1)c < d <= mc`
    Upper,
    /// `d > mc`, impossible for a family without an `s`-matching.
    ViolatesBound,
}

impl Regime {
    pub fn classify(d: usize, params: &ExtremalParams) -> Regime {
        let (m, c) = (params.m as usize, params.c as usize);
        match d {
            d if d < (m - 1) * c => Regime::Below,
            d if d == (m - 1) * c => Regime::Critical,
            d if d <= m * c => Regime::Upper,
            _ => Regime::ViolatesBound,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub params: ExtremalParams,
    pub size: usize,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub y_m: BigCount,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub y_m1: BigCount,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub y_sum: BigCount,
    pub d: usize,
    pub regime: Regime,
    pub d_within_mc: bool,
    /// `C(n-d, m) - C(mℓ-1, m)`, the form that takes the clique as the
    /// largest `m`-uniform family without an `ℓ`-matching.
    #[serde(serialize_with = "crate::report::ser_count")]
    pub clique_bound_rhs: BigCount,
    pub clique_bound_satisfied: bool,
    /// `C(n-d, m) - EMC(n-d, m, ℓ)` with the exact uniform maximum.
    #[serde(serialize_with = "crate::report::ser_count")]
    pub exact_bound_rhs: BigCount,
    pub exact_bound_satisfied: bool,
    /// Set when `d = mc` and `c = 1`: whether `F ⊆ W`.
    pub w_membership: Option<bool>,
}

impl StabilityReport {
    /// Every exact implication holds.
    pub fn consistent(&self) -> bool {
        self.d_within_mc && self.exact_bound_satisfied && self.w_membership != Some(false)
    }
}

fn c2(n: usize, k: usize) -> BigCount {
    binomial(n as i64, k as i64)
}

/// Largest `m`-uniform family on `[n']` without an `ℓ`-matching.
fn emc_value(n: usize, m: usize, ell: usize) -> Result<BigCount> {
    if m * ell > n {
        // no ℓ-matching fits at all
        return Ok(c2(n, m));
    }
    Ok(BigCount::from(emc_search(n, m, ell)?.0))
}

/// Layer deficits and deletion number of a shifted `F` without an `s`-matching.
pub fn layer_stability_check(f: &SetFamily, params: &ExtremalParams) -> Result<StabilityReport> {
    let n = params.n();
    if f.n() != n {
        return Err(Error::GroundMismatch(f.n(), n));
    }
    if params.is_degenerate() {
        return Err(Error::Precondition("ℓ = 0 leaves the deletion number undefined".into()));
    }
    if !is_shifted(f) {
        return Err(Error::Precondition("family is not shifted".into()));
    }
    let s = params.s as usize;
    if nu(f, Some(s)).nu >= s {
        return Err(Error::Precondition(format!("family contains a {s}-matching")));
    }
    let (m, c, ell) = (params.m as usize, params.c as usize, params.ell() as usize);
    let profile = f.layer_profile();
    let y_m = profile.deficit(m);
    let y_m1 = profile.deficit(m + 1);
    let d = deletion_number(f, m, ell, None)?.d;

    let kept = c2(n - d.min(n), m);
    let clique = c2(m * ell - 1, m);
    let clique_bound_rhs = if kept > clique { &kept - &clique } else { BigCount::from(0u32) };
    let emc = emc_value(n - d.min(n), m, ell)?;
    let exact_bound_rhs = &kept - &emc;
    let w_membership = (d == m * c && c == 1)
        .then(|| Construction::new(ConstructionKind::W, *params).densify())
        .transpose()?
        .map(|w| f.is_subfamily_of(&w));
    Ok(StabilityReport {
        params: *params,
        size: f.len(),
        y_sum: &y_m + &y_m1,
        clique_bound_satisfied: y_m >= clique_bound_rhs,
        exact_bound_satisfied: y_m >= exact_bound_rhs,
        clique_bound_rhs,
        exact_bound_rhs,
        y_m,
        y_m1,
        d,
        regime: Regime::classify(d, params),
        d_within_mc: d <= m * c,
        w_membership,
    })
}

/// Random shifted families on `[n]` without an `s`-matching.
///
/// Each one is grown from `∅` by adding random sets together with their left
/// shifts while no `s`-matching appears, stopping after a random number of
/// additions so that non-maximal families are drawn too.
pub fn sample_shifted_families(n: usize, s: usize, count: usize, seed: u64) -> Result<Vec<SetFamily>> {
    if n == 0 {
        return Err(Error::EmptyGround);
    }
    if n > 16 {
        return Err(Error::DenseLimit { n, limit: 16 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all: Vec<SetWord> = (0..1u64 << n).map(SetWord::from_mask).collect();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        all.shuffle(&mut rng);
        let stop_after = rng.gen_range(1..=all.len());
        let mut f = SetFamily::empty(n)?;
        let mut added = 0;
        for &a in &all {
            if added == stop_after {
                break;
            }
            if f.contains(a) {
                continue;
            }
            let g = shift_closure(&f.union(&SetFamily::new(n, [a])?)?);
            if nu(&g, Some(s)).nu < s {
                f = g;
                added += 1;
            }
        }
        out.push(f);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremStatus {
    /// The maxima are exactly `{Q}`, or `{Q, W}` when `c = 1`.
    Holds,
    /// Some other family is maximum at this `s`.
    BelowThreshold,
    /// `n` is beyond the search guard; only construction sizes are reported.
    SearchInfeasible,
}

/// A feasible family met by the search that avoids `Q` (and `W` when `c = 1`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplementRow {
    pub size: usize,
    pub complement: usize,
    pub exceeds_q_complement: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub params: ExtremalParams,
    pub status: TheoremStatus,
    pub expected_kinds: Vec<String>,
    pub extremal_kinds: Vec<String>,
    #[serde(serialize_with = "crate::report::ser_opt_count")]
    pub e_value: Option<BigCount>,
    pub compared_constructions: Vec<ConstructionSize>,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub q_complement: BigCount,
    pub complement_rows: Vec<ComplementRow>,
    /// Whether every row has a complement strictly larger than `Q`'s.
    pub rows_exceed_q: Option<bool>,
    pub nodes: u64,
}

/// Checks whether `Q` (with `W` when `c = 1`) are the only maximum shifted families.
pub fn main_theorem_check(m: u32, c: u32, s: u32, cfg: &Config) -> Result<MainTheoremReport> {
    let params = ExtremalParams::new(m, c, s)?;
    let n = params.n();
    let mut expected = vec![ConstructionKind::Q];
    if c == 1 {
        expected.push(ConstructionKind::W);
    }
    let q = Construction::new(ConstructionKind::Q, params);
    let mut report = MainTheoremReport {
        params,
        status: TheoremStatus::SearchInfeasible,
        expected_kinds: expected.iter().map(|k| k.name().to_string()).collect(),
        extremal_kinds: Vec::new(),
        e_value: None,
        compared_constructions: construction_sizes(&params),
        q_complement: q.complement_size(),
        complement_rows: Vec::new(),
        rows_exceed_q: None,
        nodes: 0,
    };
    let search = match e_exact(n, s as usize, cfg) {
        Ok(r) => r,
        Err(Error::GuardExceeded { .. }) => return Ok(report),
        Err(e) => return Err(e),
    };
    let dense: Vec<SetFamily> =
        expected.iter().map(|&k| Construction::new(k, params).densify()).collect::<Result<_>>()?;
    let mut found = search.extremal_families.clone();
    found.dedup();
    let unique = !search.families_truncated && found.len() == dense.len() && dense.iter().all(|d| found.contains(d));
    report.status = if unique { TheoremStatus::Holds } else { TheoremStatus::BelowThreshold };
    report.extremal_kinds = search.extremal_kinds.clone();
    report.e_value = Some(search.e_value.clone());
    report.nodes = search.nodes;

    let q_comp = report.q_complement.iter_u64_digits().next().unwrap_or(0) as usize;
    let total = 1usize << n;
    let mut met: Vec<&SetFamily> = Vec::new();
    for f in search.visited_families.iter().chain(&search.extremal_families) {
        if !met.contains(&f) {
            met.push(f);
        }
    }
    report.complement_rows = met
        .into_iter()
        .filter(|f| !dense.iter().any(|d| f.is_subfamily_of(d)))
        .map(|f| ComplementRow {
            size: f.len(),
            complement: total - f.len(),
            exceeds_q_complement: total - f.len() > q_comp,
        })
        .collect();
    report.rows_exceed_q = Some(report.complement_rows.iter().all(|r| r.exceeds_q_complement));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: u32, c: u32, s: u32) -> ExtremalParams {
        ExtremalParams::new(m, c, s).unwrap()
    }

    fn dense(kind: ConstructionKind, p: ExtremalParams) -> SetFamily {
        Construction::new(kind, p).densify().unwrap()
    }

    #[test]
    fn q_sits_in_the_critical_regime() {
        let p = params(2, 1, 3);
        let r = layer_stability_check(&dense(ConstructionKind::Q, p), &p).unwrap();
        assert_eq!(r.d, 1);
        assert_eq!(r.regime, Regime::Critical);
        // Q's 2-layer is C([4], 2): 21 - 6 = 15 missing; 3-layer has 2a+b >= 4
        let q = dense(ConstructionKind::Q, p);
        let y3 = 35 - q.layer(3).len();
        assert_eq!(r.y_m, 15u32.into());
        assert_eq!(r.y_m1, BigCount::from(y3));
        assert!(r.consistent());
    }

    #[test]
    fn w_sits_at_mc() {
        let p = params(2, 1, 3);
        let r = layer_stability_check(&dense(ConstructionKind::W, p), &p).unwrap();
        assert_eq!(r.d, 2);
        assert_eq!(r.regime, Regime::Upper);
        assert_eq!(r.w_membership, Some(true));
    }

    #[test]
    fn clique_form_fails_for_p_but_exact_form_holds() {
        let p = params(2, 1, 3);
        let r = layer_stability_check(&dense(ConstructionKind::P, p), &p).unwrap();
        assert_eq!(r.d, 0);
        assert_eq!(r.y_m, 15u32.into());
        assert_eq!(r.clique_bound_rhs, 18u32.into());
        assert!(!r.clique_bound_satisfied);
        // star through 1 is the largest intersecting 2-graph on [7]
        assert_eq!(r.exact_bound_rhs, 15u32.into());
        assert!(r.exact_bound_satisfied);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = params(2, 1, 3);
        let full = SetFamily::power_set(7).unwrap();
        assert!(matches!(layer_stability_check(&full, &p), Err(Error::Precondition(_))));
        let unshifted = SetFamily::new(7, [SetWord::from_elements([2]).unwrap()]).unwrap();
        assert!(matches!(layer_stability_check(&unshifted, &p), Err(Error::Precondition(_))));
    }

    #[test]
    fn samples_are_shifted_and_feasible() {
        let fams = sample_shifted_families(5, 2, 20, 7).unwrap();
        assert_eq!(fams.len(), 20);
        for f in &fams {
            assert!(is_shifted(f));
            assert!(nu(f, None).nu < 2);
        }
        assert_eq!(fams, sample_shifted_families(5, 2, 20, 7).unwrap());
    }

    #[test]
    fn main_theorem_small_rows() {
        let cfg = Config::default();
        let r = main_theorem_check(2, 1, 3, &cfg).unwrap();
        assert_eq!(r.status, TheoremStatus::BelowThreshold);
        assert_eq!(r.extremal_kinds, vec!["P"]);
        let r = main_theorem_check(1, 1, 2, &cfg).unwrap();
        assert!(r.extremal_kinds.contains(&"W".to_string()));
        let sizes: Vec<_> = r.compared_constructions.iter().map(|c| c.size.clone()).collect();
        assert_eq!(sizes[2], sizes[3]);
        let r = main_theorem_check(3, 1, 30, &cfg).unwrap();
        assert_eq!(r.status, TheoremStatus::SearchInfeasible);
        assert!(r.e_value.is_none());
    }
}
