mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use sdn_core::codec::SdnSequence;
use sdn_core::sort::{presort_small, sort, sort_auto, sort_big, sort_tracked, SortConfig, Sorter};

fn big_values() -> impl Strategy<Value = Vec<BigUint>> {
    let value = prop_oneof![
        4 => (0u64..300).prop_map(BigUint::from),
        2 => any::<u64>().prop_map(BigUint::from),
        1 => prop::collection::vec(any::<u32>(), 1..17).prop_map(BigUint::new),
    ];
    prop::collection::vec(value, 0..120)
}

#[test]
fn small_worked_example() {
    let s = SdnSequence::from_values(&[6, 9, 2, 2, 0]);
    assert_eq!(sort_auto(&s).unwrap().to_vec().unwrap(), vec![0, 2, 2, 6, 9]);
}

#[test]
fn split_entry_points_check_preconditions() {
    let s = SdnSequence::from_values(&[40, 1, 3, 500, 2]);
    let cfg = SortConfig::for_bits(s.len_bits()).unwrap().with_threshold_log(3).unwrap();
    // 40 and 500 exceed q = 8.
    assert!(presort_small(&s, &cfg).is_err());
    assert!(sort_big(&s, &cfg).is_err());
    let small = SdnSequence::from_values(&[7, 1, 8, 0]);
    assert_eq!(presort_small(&small, &cfg).unwrap().to_vec().unwrap(), vec![0, 1, 7, 8]);
    let big = SdnSequence::from_values(&[900, 9, 40]);
    assert_eq!(sort_big(&big, &cfg).unwrap().to_vec().unwrap(), vec![9, 40, 900]);
}

#[test]
fn config_bounds() {
    assert!(SortConfig::new(100, 1).is_err());
    assert!(SortConfig::new(100, 33).is_err());
    assert!(SortConfig::new(1 << 20, 8).is_err());
    let cfg = SortConfig::new(1 << 20, 20).unwrap();
    assert_eq!(cfg.digit_bits(), 10);
}

#[test]
fn sorter_is_reusable_across_sizes() {
    let mut sorter = Sorter::new();
    for n in [10usize, 5000, 3, 70_000] {
        let values: Vec<u64> = (0..n as u64).map(|i| (i * 7919) % 1009).collect();
        let s = SdnSequence::from_values(&values);
        let cfg = SortConfig::for_bits(s.len_bits()).unwrap();
        let mut want = values.clone();
        want.sort();
        assert_eq!(sorter.sort(&s, &cfg).unwrap().to_vec().unwrap(), want);
    }
}

proptest! {
    #[test]
    fn matches_stable_oracle(values in big_values(), q_log in prop::option::of(1usize..80)) {
        let s = SdnSequence::from_biguints(&values);
        let mut cfg = SortConfig::for_bits(s.len_bits().max(4)).unwrap();
        if let Some(q) = q_log {
            cfg = cfg.with_threshold_log(q).unwrap();
        }
        let (sorted, origin) = sort_tracked(&s, &cfg).unwrap();
        let order = common::stable_order(&values);
        prop_assert_eq!(&origin, &order);
        let want: Vec<BigUint> = order.iter().map(|&i| values[i].clone()).collect();
        prop_assert_eq!(sorted.to_biguints(), want);
        prop_assert_eq!(sorted.len_bits(), s.len_bits());
    }

    #[test]
    fn output_is_a_permutation_of_codewords(values in prop::collection::vec(0u64..5000, 0..400)) {
        let s = SdnSequence::from_values(&values);
        let cfg = SortConfig::for_bits(s.len_bits().max(4)).unwrap();
        let out = sort(&s, &cfg).unwrap();
        let mut want = values.clone();
        want.sort();
        prop_assert_eq!(out.to_vec().unwrap(), want);
        prop_assert_eq!(out.count(), s.count());
    }
}
