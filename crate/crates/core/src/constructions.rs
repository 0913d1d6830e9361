//! The four candidate extremal families `P`, `P'`, `Q`, `W` for `n = ms + c`.
//!
//! Each family splits `[n]` into a head `[h]` and a tail `[h+1, n]`, and
//! membership of a set depends only on how many head elements `a` and tail
//! elements `b` it holds:
//!
//! | kind | head `h`      | member iff                        |
//! |------|---------------|-----------------------------------|
//! | `P`  | `ℓ - 1`       | `2a + b >= m + 1`                 |
//! | `P'` | `mℓ - 1`      | `a + b >= m + 1` or `(a, b) = (m, 0)` |
//! | `Q`  | `ms - c - 1`  | `2a + b >= 2m`                    |
//! | `W`  | `ms - 1`      | `a >= m`                          |
//!
//! Negative head lengths (degenerate `ℓ = 0`) are clamped to an empty head.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::count::{binomial, binomial_sum, pow2, BigCount};
use crate::error::{Error, Result};
use crate::family::{SetFamily, SetWord, MAX_DENSE_N};

/// `(m, c, s)` with `n = ms + c` and `ℓ = s - c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtremalParams {
    pub m: u32,
    pub c: u32,
    pub s: u32,
}

impl ExtremalParams {
    pub fn new(m: u32, c: u32, s: u32) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidParams(format!("m must be >= 1, got {m}")));
        }
        if c < 1 || c > s {
            return Err(Error::InvalidParams(format!("need 1 <= c <= s, got c={c}, s={s}")));
        }
        Ok(ExtremalParams { m, c, s })
    }

    /// Writes `n = ms + c` with `1 <= c <= s`; `None` when `n <= s` (no `m >= 1` fits).
    pub fn decompose(n: usize, s: u32) -> Option<Self> {
        if s == 0 || n <= s as usize {
            return None;
        }
        let s64 = s as usize;
        let m = (n - 1) / s64;
        let c = n - m * s64;
        ExtremalParams::new(m as u32, c as u32, s).ok()
    }

    pub fn n(&self) -> usize {
        (self.m as usize) * (self.s as usize) + self.c as usize
    }

    /// `ℓ = s - c >= 0`.
    pub fn ell(&self) -> u32 {
        self.s - self.c
    }

    pub fn is_degenerate(&self) -> bool {
        self.ell() == 0
    }
}

impl fmt::Display for ExtremalParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(m={}, c={}, s={}; n={}, ℓ={})", self.m, self.c, self.s, self.n(), self.ell())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstructionKind {
    P,
    #[serde(rename = "Pprime")]
    PPrime,
    Q,
    W,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 4] =
        [ConstructionKind::P, ConstructionKind::PPrime, ConstructionKind::Q, ConstructionKind::W];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::P => "P",
            ConstructionKind::PPrime => "Pprime",
            ConstructionKind::Q => "Q",
            ConstructionKind::W => "W",
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P" | "p" => Ok(ConstructionKind::P),
            "Pprime" | "P'" | "pprime" | "Pp" => Ok(ConstructionKind::PPrime),
            "Q" | "q" => Ok(ConstructionKind::Q),
            "W" | "w" => Ok(ConstructionKind::W),
            other => Err(Error::InvalidParams(format!("unknown construction kind `{other}`"))),
        }
    }
}

/// A construction kind instantiated at concrete parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Construction {
    pub kind: ConstructionKind,
    pub params: ExtremalParams,
}

impl Construction {
    pub fn new(kind: ConstructionKind, params: ExtremalParams) -> Self {
        Construction { kind, params }
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// Length of the head block `[h]`.
    pub fn head_len(&self) -> usize {
        let ExtremalParams { m, c, s } = self.params;
        let (m, c, s, ell) = (m as i64, c as i64, s as i64, self.params.ell() as i64);
        let h = match self.kind {
            ConstructionKind::P => ell - 1,
            ConstructionKind::PPrime => m * ell - 1,
            ConstructionKind::Q => m * s - c - 1,
            ConstructionKind::W => m * s - 1,
        };
        h.max(0) as usize
    }

    /// Membership of a set with `a` head elements and `b` tail elements.
    pub fn accepts_counts(&self, a: usize, b: usize) -> bool {
        let m = self.params.m as usize;
        match self.kind {
            ConstructionKind::P => 2 * a + b > m,
            ConstructionKind::PPrime => a + b > m || (b == 0 && a == m),
            ConstructionKind::Q => 2 * a + b >= 2 * m,
            ConstructionKind::W => a >= m,
        }
    }

    /// Membership for a set given by 1-based elements; works for any `n`.
    pub fn member_elements(&self, elements: &[u32]) -> Result<bool> {
        let n = self.n();
        let h = self.head_len();
        let mut a = 0;
        for &e in elements {
            if e == 0 || e as usize > n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            if (e as usize) <= h {
                a += 1;
            }
        }
        Ok(self.accepts_counts(a, elements.len() - a))
    }

    pub fn member(&self, set: SetWord) -> Result<bool> {
        if !set.within(self.n()) {
            return Err(Error::ElementOutOfRange { element: set.max_element(), n: self.n() });
        }
        let a = set.intersection(SetWord::prefix(self.head_len())).len();
        Ok(self.accepts_counts(a, set.len() - a))
    }

    pub fn densify(&self) -> Result<SetFamily> {
        let n = self.n();
        if n > MAX_DENSE_N {
            return Err(Error::DenseLimit { n, limit: MAX_DENSE_N });
        }
        let head = SetWord::prefix(self.head_len());
        SetFamily::from_predicate(n, |s| {
            let a = s.intersection(head).len();
            self.accepts_counts(a, s.len() - a)
        })
    }

    /// Exact size of the complement `2^[n] \ F` in closed form.
    pub fn complement_size(&self) -> BigCount {
        let ExtremalParams { m, s, .. } = self.params;
        let n = self.n() as i64;
        let (m, s, ell) = (m as i64, s as i64, self.params.ell() as i64);
        match self.kind {
            ConstructionKind::P => {
                let head = (ell - 1).max(0);
                (0..=m / 2).map(|j| binomial(head, j) * binomial_sum(n - head, 0, m - 2 * j)).sum()
            }
            ConstructionKind::PPrime => binomial_sum(n, 0, m) - binomial(m * ell - 1, m),
            ConstructionKind::Q => {
                let head = self.head_len() as i64;
                let tail = n - head;
                (0..=tail.min(2 * m - 1)).map(|t| binomial(tail, t) * binomial_sum(head, 0, (2 * m - 1 - t) / 2)).sum()
            }
            ConstructionKind::W => pow2((n - m * s + 1) as u32) * binomial_sum(m * s - 1, 0, m - 1),
        }
    }

    /// Exact `|F|`.
    pub fn size(&self) -> BigCount {
        pow2(self.n() as u32) - self.complement_size()
    }

    /// Coefficient `κ` in `|complement| = κ·C(n, m-1) + O(s^{m-2})`.
    pub fn leading_coefficient(&self) -> Result<BigCount> {
        let ExtremalParams { m, c, .. } = self.params;
        match self.kind {
            ConstructionKind::P => {
                Err(Error::InvalidParams("the complement of P grows like s^m and has no C(n, m-1) coefficient".into()))
            }
            ConstructionKind::PPrime => Ok(BigCount::from((m + 1) * c + 2)),
            ConstructionKind::Q => Ok(BigCount::from(2 * c + 2)),
            ConstructionKind::W => Ok(pow2(c + 1)),
        }
    }

    /// The fractional cover certifying that no `s` pairwise disjoint members exist.
    ///
    /// Weights are constant on the head and on the tail. With `ℓ = 0` the
    /// total can reach `s`, and the certificate is then rejected.
    pub fn canonical_weights(&self) -> WeightVector {
        let ExtremalParams { m, .. } = self.params;
        let m = BigInt::from(m);
        let ratio = |p: u32, q: &BigInt| BigRational::new(BigInt::from(p), q.clone());
        let (head_w, tail_w) = match self.kind {
            ConstructionKind::P => (ratio(2, &(&m + 1)), ratio(1, &(&m + 1))),
            ConstructionKind::PPrime => (ratio(1, &m), ratio(1, &(&m + 1))),
            ConstructionKind::Q => (ratio(1, &m), ratio(1, &(&m * 2))),
            ConstructionKind::W => (ratio(1, &m), BigRational::zero()),
        };
        let h = self.head_len();
        let w = (0..self.n()).map(|i| if i < h { head_w.clone() } else { tail_w.clone() }).collect();
        WeightVector::new(w).expect("canonical weights are nonnegative")
    }
}

/// Exact nonnegative weights `x_1..x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<BigRational>);

impl WeightVector {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| w < &BigRational::zero()) {
            return Err(Error::NegativeWeight { index: i + 1 });
        }
        Ok(WeightVector(weights))
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, w| acc + w)
    }

    /// `sum_{i in set} x_i`.
    pub fn weight_of(&self, set: SetWord) -> BigRational {
        set.iter().fold(BigRational::zero(), |acc, e| acc + &self.0[e as usize - 1])
    }

    pub fn uniform(n: usize, value: BigRational) -> Result<Self> {
        WeightVector::new(vec![value; n])
    }
}

/// Comma- or space-separated exact rationals such as `2/3, 1/3, 1/3`.
impl FromStr for WeightVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigRational>().map_err(|_| Error::InvalidParams(format!("`{t}` is not a rational number")))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightVector::new(weights)
    }
}

/// `|Q(m,s,s-1)|` vs `|W(m,s,s-1)|` (the `c = 1` case).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QwEqualityReport {
    pub m: u32,
    pub s: u32,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub q_size: BigCount,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub w_size: BigCount,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub q_complement: BigCount,
    #[serde(serialize_with = "crate::report::ser_count")]
    pub w_complement: BigCount,
    pub equal: bool,
    /// Set when both families were also densified and counted (`n <= 16`).
    pub enumeration_agrees: Option<bool>,
}

pub const ENUMERATION_CHECK_LIMIT: usize = 16;

pub fn q_w_equality_check(m: u32, s: u32) -> Result<QwEqualityReport> {
    let params = ExtremalParams::new(m, 1, s)?;
    let q = Construction::new(ConstructionKind::Q, params);
    let w = Construction::new(ConstructionKind::W, params);
    let (qc, wc) = (q.complement_size(), w.complement_size());
    let enumeration_agrees = if params.n() <= ENUMERATION_CHECK_LIMIT {
        let (qd, wd) = (q.densify()?, w.densify()?);
        let total = 1usize << params.n();
        Some(BigCount::from(total - qd.len()) == qc && BigCount::from(total - wd.len()) == wc && qd.len() == wd.len())
    } else {
        None
    };
    Ok(QwEqualityReport {
        m,
        s,
        q_size: q.size(),
        w_size: w.size(),
        equal: qc == wc,
        q_complement: qc,
        w_complement: wc,
        enumeration_agrees,
    })
}

/// `|{A ⊆ [n] : |A ∩ [ms-1]| >= m}|` for `n >= ms - 1`; Kleitman's extremal
/// families for `n = ms - 1` and `n = ms`.
pub fn kleitman_size(m: u32, s: u32, n: usize) -> BigCount {
    let head = m as i64 * s as i64 - 1;
    assert!(n as i64 >= head, "ground set smaller than the head");
    pow2((n as i64 - head) as u32) * binomial_sum(head, m as i64, head)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_parse_from_text() {
        let w: WeightVector = "2/3, 1/3 1/3".parse().unwrap();
        assert_eq!(w.total(), BigRational::new(4.into(), 3.into()));
        assert!(matches!("1/2,-1".parse::<WeightVector>(), Err(Error::NegativeWeight { index: 2 })));
        assert!("1/0x".parse::<WeightVector>().is_err());
    }

    fn sw(e: &[u32]) -> SetWord {
        SetWord::from_elements(e.iter().copied()).unwrap()
    }

    fn con(kind: ConstructionKind, m: u32, c: u32, s: u32) -> Construction {
        Construction::new(kind, ExtremalParams::new(m, c, s).unwrap())
    }

    // Independent oracle: evaluate the literal definitions on every subset.
    #[allow(clippy::int_plus_one)]
    fn literal_member(kind: ConstructionKind, p: ExtremalParams, set: SetWord) -> bool {
        let (m, c, s) = (p.m as i64, p.c as i64, p.s as i64);
        let ell = s - c;
        let size = set.len() as i64;
        let below = |k: i64| set.iter().filter(|&e| (e as i64) <= k).count() as i64;
        match kind {
            ConstructionKind::P => size + below(ell - 1) >= m + 1,
            ConstructionKind::PPrime => size >= m + 1 || (size == m && set.iter().all(|e| (e as i64) <= m * ell - 1)),
            ConstructionKind::Q => size + below(m * s - c - 1) >= 2 * m,
            ConstructionKind::W => below(m * s - 1) >= m,
        }
    }

    #[test]
    fn params_validation() {
        assert!(ExtremalParams::new(0, 1, 3).is_err());
        assert!(ExtremalParams::new(2, 0, 3).is_err());
        assert!(ExtremalParams::new(2, 4, 3).is_err());
        let p = ExtremalParams::new(2, 1, 3).unwrap();
        assert_eq!((p.n(), p.ell()), (7, 2));
        assert_eq!(ExtremalParams::decompose(7, 3), Some(p));
        assert_eq!(ExtremalParams::decompose(6, 3), ExtremalParams::new(1, 3, 3).ok());
        assert_eq!(ExtremalParams::decompose(3, 3), None);
    }

    #[test]
    fn member_examples() {
        let q = con(ConstructionKind::Q, 2, 1, 4);
        assert!(q.member(sw(&[1, 2])).unwrap());
        assert!(!q.member(sw(&[7, 8, 9])).unwrap());
        let w = con(ConstructionKind::W, 2, 1, 4);
        assert!(!w.member(sw(&[1, 8, 9])).unwrap());
        assert!(w.member(sw(&[1, 2])).unwrap());
        let p = con(ConstructionKind::P, 2, 1, 3);
        assert!(p.member(sw(&[1, 2])).unwrap());
        assert!(!p.member(sw(&[2, 3])).unwrap());
        assert!(matches!(p.member(sw(&[8])), Err(Error::ElementOutOfRange { element: 8, n: 7 })));
        assert!(p.member_elements(&[0]).is_err());
    }

    #[test]
    fn member_works_beyond_dense_limit() {
        let q = con(ConstructionKind::Q, 5, 1, 100); // n = 501
        assert!(q.member_elements(&[1, 2, 3, 4, 5]).unwrap());
        assert!(!q.member_elements(&[497, 498, 499, 500, 501]).unwrap());
        assert!(q.densify().is_err());
    }

    #[test]
    fn densify_sizes() {
        assert_eq!(con(ConstructionKind::Q, 2, 1, 3).densify().unwrap().len(), 104);
        assert_eq!(con(ConstructionKind::W, 2, 1, 3).densify().unwrap().len(), 104);
        assert_eq!(con(ConstructionKind::P, 2, 1, 3).densify().unwrap().len(), 105);
    }

    #[test]
    fn closed_forms_small() {
        assert_eq!(con(ConstructionKind::W, 2, 1, 3).complement_size(), 24u32.into());
        assert_eq!(con(ConstructionKind::Q, 2, 1, 3).complement_size(), 24u32.into());
        assert_eq!(con(ConstructionKind::P, 2, 1, 3).complement_size(), 23u32.into());
    }

    #[test]
    fn closed_forms_match_literal_enumeration() {
        for s in 1..=16u32 {
            for c in 1..=s {
                for m in 1..=16u32 {
                    let Ok(p) = ExtremalParams::new(m, c, s) else { continue };
                    if p.n() > 12 {
                        continue;
                    }
                    for kind in ConstructionKind::ALL {
                        let k = Construction::new(kind, p);
                        let count = (0..1u64 << p.n())
                            .filter(|&mask| !literal_member(kind, p, SetWord::from_mask(mask)))
                            .count();
                        assert_eq!(k.complement_size(), BigCount::from(count), "{kind} {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(con(ConstructionKind::Q, 2, 1, 5).leading_coefficient().unwrap(), 4u32.into());
        assert_eq!(con(ConstructionKind::W, 2, 2, 5).leading_coefficient().unwrap(), 8u32.into());
        assert_eq!(con(ConstructionKind::PPrime, 2, 1, 5).leading_coefficient().unwrap(), 5u32.into());
        assert!(con(ConstructionKind::P, 2, 1, 5).leading_coefficient().is_err());
    }

    #[test]
    fn canonical_weight_sums() {
        let r = |p: i64, q: i64| BigRational::new(p.into(), q.into());
        assert_eq!(con(ConstructionKind::Q, 2, 1, 3).canonical_weights().total(), r(11, 4));
        let pw = con(ConstructionKind::P, 2, 1, 3).canonical_weights();
        assert_eq!(pw.weights()[0], r(2, 3));
        assert!(pw.weights()[1..].iter().all(|w| *w == r(1, 3)));
        assert_eq!(pw.total(), r(8, 3));
        for (m, c, s) in [(2, 1, 3), (3, 2, 4), (1, 1, 2), (4, 3, 7)] {
            let w = con(ConstructionKind::W, m, c, s).canonical_weights().total();
            assert_eq!(w, r((m * s - 1) as i64, m as i64));
        }
    }

    #[test]
    fn weight_vector_rejects_negative() {
        let w = vec![BigRational::from_integer(1.into()), BigRational::from_integer((-1).into())];
        assert_eq!(WeightVector::new(w), Err(Error::NegativeWeight { index: 2 }));
    }

    #[test]
    fn q_w_examples() {
        let r = q_w_equality_check(2, 3).unwrap();
        assert!(r.equal);
        assert_eq!(r.q_complement, 24u32.into());
        assert_eq!(r.enumeration_agrees, Some(true));
        assert!(q_w_equality_check(2, 100).unwrap().equal);
        assert!(q_w_equality_check(5, 50).unwrap().equal);
    }

    #[test]
    fn degenerate_ell_zero() {
        // c = s: the P head [ℓ-1] is empty and the P' clique vanishes.
        let p = ExtremalParams::new(1, 2, 2).unwrap();
        for kind in ConstructionKind::ALL {
            let k = Construction::new(kind, p);
            let dense = k.densify().unwrap();
            assert_eq!(BigCount::from(16 - dense.len()), k.complement_size(), "{kind}");
        }
    }

    #[test]
    fn kleitman_sizes() {
        // all sets of size >= 2 in [5]
        assert_eq!(kleitman_size(2, 3, 5), 26u32.into());
        assert_eq!(kleitman_size(2, 3, 6), 52u32.into());
        assert_eq!(kleitman_size(1, 2, 3), 4u32.into());
    }
}
