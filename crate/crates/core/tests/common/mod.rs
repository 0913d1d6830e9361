//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's search or counting code.
#![allow(dead_code)]

use num_bigint::BigUint;

pub fn binom(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from((n - i) as u64) / BigUint::from((i + 1) as u64);
    }
    acc
}

pub fn binom_u(n: usize, k: usize) -> usize {
    binom(n as i64, k as i64).to_string().parse().unwrap()
}

/// Largest number of pairwise disjoint masks, by plain recursion.
pub fn brute_nu(sets: &[u64]) -> usize {
    fn go(sets: &[u64], used: u64) -> usize {
        match sets.split_first() {
            None => 0,
            Some((&a, rest)) => {
                let skip = go(rest, used);
                if a & used == 0 {
                    skip.max(1 + go(rest, used | a))
                } else {
                    skip
                }
            }
        }
    }
    // ∅ is disjoint from everything, including itself only once
    go(sets, 0)
}

pub fn popcount(x: u64) -> usize {
    x.count_ones() as usize
}

pub fn prefix_mask(k: i64) -> u64 {
    if k <= 0 {
        0
    } else {
        (1u64 << k) - 1
    }
}

/// Membership straight from the four definitions, with `n = ms + c`, `ℓ = s - c`.
#[allow(clippy::int_plus_one)]
pub fn literal_member(kind: &str, m: i64, c: i64, s: i64, a: u64) -> bool {
    let ell = s - c;
    let size = popcount(a) as i64;
    let within = |k: i64| popcount(a & prefix_mask(k)) as i64;
    match kind {
        "P" => size + within(ell - 1) >= m + 1,
        "Pprime" => size >= m + 1 || (size == m && a & !prefix_mask(m * ell - 1) == 0),
        "Q" => size + within(m * s - c - 1) >= 2 * m,
        "W" => within(m * s - 1) >= m,
        _ => unreachable!(),
    }
}

pub const KINDS: [&str; 4] = ["P", "Pprime", "Q", "W"];

/// All `(m, c, s)` with `s >= 2`, `1 <= c <= s` and `ms + c <= max_n`.
pub fn params_up_to(max_n: usize) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for m in 1..=max_n as u32 {
        for s in 2..=max_n as u32 {
            for c in 1..=s {
                if (m * s + c) as usize <= max_n {
                    out.push((m, c, s));
                }
            }
        }
    }
    out
}
