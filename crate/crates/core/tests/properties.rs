mod common;

use proptest::prelude::*;

use common::brute_nu;
use extremal_core::io::{format_family, parse_family};
use extremal_core::matching::{has_matching_of_size, is_valid_matching, nu};
use extremal_core::order::{prefix_le, shifts_to};
use extremal_core::shift::{compress_to_fixpoint, doubling, is_shifted, shift_closure, shift_compress};
use extremal_core::{SetFamily, SetWord};

fn family(max_n: usize, max_sets: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..1u64 << n, 0..=max_sets)
            .prop_map(move |v| SetFamily::new(n, v.into_iter().map(SetWord::from_mask)).unwrap())
    })
}

fn masks(f: &SetFamily) -> Vec<u64> {
    f.iter().map(SetWord::mask).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn compression_keeps_size_and_never_raises_nu(f in family(5, 14), i in 1u32..5, j in 2u32..6) {
        prop_assume!(i < j && (j as usize) <= f.n());
        let g = shift_compress(&f, i, j).unwrap();
        prop_assert_eq!(g.len(), f.len());
        prop_assert!(brute_nu(&masks(&g)) <= brute_nu(&masks(&f)));
    }

    #[test]
    fn doubling_keeps_nu_without_empty_set(f in family(9, 12)) {
        let g = doubling(&f).unwrap();
        let bump = usize::from(f.contains(SetWord::EMPTY));
        prop_assert_eq!(nu(&g, None).nu, brute_nu(&masks(&f)) + bump);
        prop_assert_eq!(g.len(), 2 * f.len());
    }

    #[test]
    fn shift_closure_is_shifted_idempotent_and_extensive(f in family(6, 10)) {
        let g = shift_closure(&f);
        prop_assert!(is_shifted(&g));
        prop_assert!(f.is_subfamily_of(&g));
        prop_assert_eq!(shift_closure(&g), g.clone());
    }

    #[test]
    fn compressing_to_fixpoint_gives_shifted_family(f in family(6, 16)) {
        let g = compress_to_fixpoint(&f);
        prop_assert!(is_shifted(&g));
        prop_assert_eq!(g.len(), f.len());
        prop_assert!(nu(&g, None).nu <= nu(&f, None).nu);
    }

    #[test]
    fn nu_matches_recursion_and_is_monotone(f in family(6, 12), extra in 0u64..64) {
        let r = nu(&f, None);
        prop_assert_eq!(r.nu, brute_nu(&masks(&f)));
        prop_assert!(is_valid_matching(&f, &r.witness));
        prop_assert_eq!(r.witness.len(), r.nu);
        let bigger = f.union(&SetFamily::new(f.n(), [SetWord::from_mask(extra & ((1 << f.n()) - 1))]).unwrap()).unwrap();
        prop_assert!(nu(&bigger, None).nu >= r.nu);
    }

    #[test]
    fn threshold_query_agrees_with_nu(f in family(6, 12), s in 1usize..6) {
        let found = has_matching_of_size(&f, s);
        prop_assert_eq!(found.is_some(), nu(&f, None).nu >= s);
        if let Some(w) = found {
            prop_assert_eq!(w.len(), s);
            prop_assert!(is_valid_matching(&f, &w));
        }
    }

    #[test]
    fn complement_is_an_involution(f in family(6, 20)) {
        let c = f.complement();
        prop_assert_eq!(c.len() + f.len(), 1 << f.n());
        prop_assert_eq!(c.complement(), f);
    }

    #[test]
    fn text_round_trip(f in family(8, 20)) {
        prop_assert_eq!(parse_family(&format_family(&f)).unwrap(), f);
    }

    #[test]
    fn shifting_and_growing_move_up_in_prefix_order(a in 0u64..256, b in 0u64..256) {
        let (a, b) = (SetWord::from_mask(a), SetWord::from_mask(b));
        if shifts_to(a, b) || a.is_subset(b) {
            prop_assert!(prefix_le(a, b));
        }
    }
}
