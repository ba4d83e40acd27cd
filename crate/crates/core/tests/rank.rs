mod common;

use num_bigint::BigUint;
use proptest::prelude::*;
use sdn_core::codec::SdnSequence;
use sdn_core::rank::{
    build_dense_rank, build_rank, CompetitiveRankStructure, DenseRankStructure, QueryCounter,
};

fn check(values: &[BigUint]) -> Result<(), TestCaseError> {
    let s = SdnSequence::from_biguints(values);
    let dense = DenseRankStructure::build(&s).unwrap();
    let comp = CompetitiveRankStructure::build(&s).unwrap();
    for ((p, x), v) in s.iter().zip(values) {
        let mut counter = QueryCounter::default();
        prop_assert_eq!(dense.rank_traced(p, x, &mut counter), common::dense_rank_scan(values, v));
        prop_assert!(counter.frames <= 3 && counter.tables <= 2);
        let mut counter = QueryCounter::default();
        prop_assert_eq!(comp.rank_traced(p, x, &mut counter), common::rank_scan(values, v));
        prop_assert!(counter.directory <= 1 && counter.select <= 1);
        prop_assert!(counter.frames <= 3 && counter.tables <= 2);
    }
    Ok(())
}

#[test]
fn worked_example() {
    let s = SdnSequence::from_values(&[6, 9, 2, 2, 0]);
    let dense = build_dense_rank(&s).unwrap();
    let comp = build_rank(&s).unwrap();
    let d: Vec<u64> = s.iter().map(|(p, x)| dense.rank(p, x)).collect();
    let r: Vec<u64> = s.iter().map(|(p, x)| comp.rank(p, x)).collect();
    assert_eq!(d, vec![2, 3, 1, 1, 0]);
    assert_eq!(r, vec![3, 4, 1, 1, 0]);
}

#[test]
fn many_copies_of_one_value() {
    // Counts far above the frame width go through marker frames.
    let mut values = vec![BigUint::from(3u8); 5000];
    values.extend((0..40u32).map(BigUint::from));
    check(&values).unwrap();
}

#[test]
fn rank_at_decodes() {
    let s = SdnSequence::from_values(&[4, 1, 4]);
    let comp = build_rank(&s).unwrap();
    let positions: Vec<usize> = s.iter().map(|(p, _)| p).collect();
    assert_eq!(comp.rank_at(&s, positions[2]).unwrap(), 1);
    let dense = build_dense_rank(&s).unwrap();
    assert_eq!(dense.rank_at(&s, positions[0]).unwrap(), 1);
}

proptest! {
    #[test]
    fn small_universe(values in prop::collection::vec(0u64..40, 0..200)) {
        let values: Vec<BigUint> = values.into_iter().map(BigUint::from).collect();
        check(&values)?;
    }

    #[test]
    fn with_big_values(values in prop::collection::vec(prop_oneof![
        3 => (0u64..2000).prop_map(BigUint::from),
        1 => any::<u64>().prop_map(BigUint::from),
        1 => prop::collection::vec(any::<u32>(), 2..6).prop_map(BigUint::new),
    ], 0..150)) {
        check(&values)?;
    }
}
