//! Orders on subsets of `[n]`.
//!
//! `shifts_to(a, b)` is the classical domination order on equal-size sets:
//! `(a_1 < .. < a_k)` can be shifted to `(b_1 < .. < b_k)` when `a_i >= b_i`.
//! `prefix_le(a, b)` compares prefix counts `|A ∩ [j]| <= |B ∩ [j]|` for all `j`;
//! a family is closed upwards in this order exactly when it is shifted and
//! closed under taking supersets.

use crate::family::SetWord;

/// `a` can be shifted to `b`: same size and `a_i >= b_i` in increasing listing.
pub fn shifts_to(a: SetWord, b: SetWord) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x >= y)
}

/// `|a ∩ [j]| <= |b ∩ [j]|` for every prefix `[j]`.
pub fn prefix_le(a: SetWord, b: SetWord) -> bool {
    let (mut ca, mut cb) = (0i32, 0i32);
    let (am, bm) = (a.mask(), b.mask());
    let top = a.max_element().max(b.max_element());
    for bit in 0..top {
        ca += (am >> bit & 1) as i32;
        cb += (bm >> bit & 1) as i32;
        if ca > cb {
            return false;
        }
    }
    true
}

/// Sets obtained from `a` by moving one element `j` to `j - 1` (when `j - 1` is free).
pub fn left_shifts(a: SetWord) -> impl Iterator<Item = SetWord> {
    let m = a.mask();
    (1..64u32).filter_map(move |bit| {
        if m >> bit & 1 == 1 && m >> (bit - 1) & 1 == 0 {
            Some(SetWord::from_mask(m & !(1 << bit) | 1 << (bit - 1)))
        } else {
            None
        }
    })
}
