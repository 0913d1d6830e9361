//! Shiftedness, shift closure, the compression `S_ij` and doubling.

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::family::{SetFamily, SetWord, MAX_DENSE_N};
use crate::order::left_shifts;

/// Every member's domination predecessors are members.
///
/// Elementary left shifts generate the domination order, so checking one step
/// from every member suffices.
pub fn is_shifted(f: &SetFamily) -> bool {
    f.iter().all(|a| left_shifts(a).filter(|b| b.within(f.n())).all(|b| f.contains(b)))
}

/// Smallest shifted family containing `f`.
///
/// Unlike `shift_compress` this adds sets and may raise the matching number.
pub fn shift_closure(f: &SetFamily) -> SetFamily {
    let n = f.n();
    let mut bits = f.bits().clone();
    // A left shift lowers the mask value, so a single descending sweep closes the family.
    for mask in (0..(1usize << n)).rev() {
        if bits.get(mask) {
            for b in left_shifts(SetWord::from_mask(mask as u64)) {
                bits.insert(b.mask() as usize);
            }
        }
    }
    SetFamily::from_bits(n, bits)
}

/// The compression `S_ij`: replace `j` by `i` in members where the image is absent.
pub fn shift_compress(f: &SetFamily, i: u32, j: u32) -> Result<SetFamily> {
    let n = f.n() as u32;
    if i < 1 || i >= j || j > n {
        return Err(Error::BadCompression { i, j });
    }
    let (bi, bj) = (1u64 << (i - 1), 1u64 << (j - 1));
    let mut bits = BitSet::new(1 << n);
    for a in f.iter() {
        let m = a.mask();
        let target = if m & bj != 0 && m & bi == 0 {
            let image = m & !bj | bi;
            if f.contains(SetWord::from_mask(image)) {
                m
            } else {
                image
            }
        } else {
            m
        };
        bits.insert(target as usize);
    }
    Ok(SetFamily::from_bits(f.n(), bits))
}

/// Applies every `S_ij` (i < j) until nothing changes; the result is shifted.
pub fn compress_to_fixpoint(f: &SetFamily) -> SetFamily {
    let n = f.n() as u32;
    let mut cur = f.clone();
    loop {
        let mut changed = false;
        for i in 1..n {
            for j in i + 1..=n {
                let next = shift_compress(&cur, i, j).expect("valid pair");
                if next != cur {
                    changed = true;
                    cur = next;
                }
            }
        }
        if !changed {
            return cur;
        }
    }
}

/// `{A ⊆ [n+1] : A ∩ [n] ∈ F}`.
///
/// Pairwise disjoint members have pairwise disjoint traces on `[n]`, and only
/// the empty trace can repeat, so `ν` is unchanged unless `∅ ∈ F`, in which
/// case `∅` and `{n+1}` raise it by one.
pub fn doubling(f: &SetFamily) -> Result<SetFamily> {
    let n = f.n();
    if n + 1 > MAX_DENSE_N {
        return Err(Error::DenseLimit { n: n + 1, limit: MAX_DENSE_N });
    }
    let mut bits = BitSet::new(1 << (n + 1));
    for a in f.iter() {
        bits.insert(a.mask() as usize);
        bits.insert((a.mask() | 1 << n) as usize);
    }
    Ok(SetFamily::from_bits(n + 1, bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::shifts_to;

    fn sw(e: &[u32]) -> SetWord {
        SetWord::from_elements(e.iter().copied()).unwrap()
    }

    fn fam(n: usize, sets: &[&[u32]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| sw(s))).unwrap()
    }

    fn shifted_by_definition(f: &SetFamily) -> bool {
        let n = f.n();
        f.iter().all(|a| (0..1u64 << n).map(SetWord::from_mask).filter(|&b| shifts_to(a, b)).all(|b| f.contains(b)))
    }

    #[test]
    fn is_shifted_examples() {
        assert!(!is_shifted(&fam(2, &[&[2]])));
        assert!(is_shifted(&fam(2, &[&[1], &[2]])));
        assert!(is_shifted(&fam(3, &[&[], &[1, 2]])));
    }

    #[test]
    fn is_shifted_agrees_with_definition() {
        // every family on [3]
        for code in 0u32..256 {
            let f = SetFamily::new(3, (0..8).filter(|b| code >> b & 1 == 1).map(SetWord::from_mask)).unwrap();
            assert_eq!(is_shifted(&f), shifted_by_definition(&f), "{f:?}");
        }
    }

    #[test]
    fn closure_examples() {
        let c = shift_closure(&fam(3, &[&[2, 3]]));
        assert_eq!(c, fam(3, &[&[1, 2], &[1, 3], &[2, 3]]));
        assert_eq!(shift_closure(&c), c);
        assert_eq!(shift_closure(&fam(2, &[&[2]])), fam(2, &[&[1], &[2]]));
    }

    #[test]
    fn compress_examples() {
        assert_eq!(shift_compress(&fam(2, &[&[2]]), 1, 2).unwrap(), fam(2, &[&[1]]));
        let f = fam(2, &[&[1], &[2]]);
        assert_eq!(shift_compress(&f, 1, 2).unwrap(), f);
        assert!(matches!(shift_compress(&f, 2, 2), Err(Error::BadCompression { .. })));
        assert!(matches!(shift_compress(&f, 2, 1), Err(Error::BadCompression { .. })));
        assert!(matches!(shift_compress(&f, 1, 3), Err(Error::BadCompression { .. })));
    }

    #[test]
    fn fixpoint_is_shifted_and_same_size() {
        let f = fam(4, &[&[3, 4], &[2, 4], &[4], &[2, 3, 4], &[1, 4]]);
        let g = compress_to_fixpoint(&f);
        assert_eq!(g.len(), f.len());
        assert!(is_shifted(&g));
    }

    #[test]
    fn doubling_examples() {
        let g = doubling(&fam(1, &[&[]])).unwrap();
        assert_eq!(g, fam(2, &[&[], &[2]]));
        let big = SetFamily::empty(24).unwrap();
        assert!(matches!(doubling(&big), Err(Error::DenseLimit { .. })));
    }
}
