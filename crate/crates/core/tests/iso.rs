mod common;

use proptest::prelude::*;
use sdn_core::iso::{
    colored_isomorphic, isomorphic, rooted_isomorphic, unrooted_isomorphic, IsoInput, IsoOptions,
};
use sdn_core::tree::Tree;
use sdn_core::workload;

#[test]
fn all_free_trees_up_to_seven() {
    let mut trees = Vec::new();
    for n in 1..=7 {
        trees.extend(common::free_trees(n));
    }
    // 1 + 1 + 1 + 2 + 3 + 6 + 11 classes.
    assert_eq!(trees.len(), 25);
    let mut rng = workload::rng(1);
    for (i, a) in trees.iter().enumerate() {
        for (j, b) in trees.iter().enumerate() {
            let (b, _) = workload::relabel(&mut rng, b);
            assert_eq!(unrooted_isomorphic(a, &b).unwrap(), i == j, "{i} {j}");
        }
    }
}

#[test]
fn rooted_differs_from_unrooted() {
    let path = Tree::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    assert!(unrooted_isomorphic(&path, &path).unwrap());
    assert!(!rooted_isomorphic(&path, 0, &path, 1).unwrap());
    assert!(rooted_isomorphic(&path, 0, &path, 2).unwrap());
}

#[test]
fn mismatched_inputs_are_errors() {
    let t = Tree::from_parens("(())").unwrap();
    let colors = [0, 1];
    let a = IsoInput::rooted(&t, 0);
    let b = IsoInput::rooted(&t, 0).with_colors(&colors);
    assert!(isomorphic(&a, &b, &IsoOptions::default()).is_err());
    assert!(isomorphic(&a, &IsoInput::unrooted(&t), &IsoOptions::default()).is_err());
    assert!(colored_isomorphic(&t, None, &[0, 2], &t, None, &[0, 0]).is_err());
    assert!(rooted_isomorphic(&t, 5, &t, 0).is_err());
}

#[test]
fn sizes_differ() {
    let a = Tree::from_parens("(())").unwrap();
    let b = Tree::from_parens("(()())").unwrap();
    assert!(!unrooted_isomorphic(&a, &b).unwrap());
    assert!(!rooted_isomorphic(&a, 0, &b, 0).unwrap());
}

#[test]
fn bicentral_trees() {
    // Two stars of different sizes joined at their centers.
    let a = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
    let b = Tree::from_edges(6, &[(5, 4), (5, 3), (5, 2), (4, 1), (4, 0)]).unwrap();
    assert!(unrooted_isomorphic(&a, &b).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeled_copies(seed in any::<u64>(), n in 1usize..300) {
        let mut rng = workload::rng(seed);
        let t = workload::random_shape(&mut rng, n);
        let (u, perm) = workload::relabel(&mut rng, &t);
        prop_assert!(unrooted_isomorphic(&t, &u).unwrap());
        prop_assert!(rooted_isomorphic(&t, 0, &u, perm[0]).unwrap());
        let colors = workload::random_colors(&mut rng, n, 3);
        let mut moved = vec![0; n];
        for v in 0..n {
            moved[perm[v]] = colors[v];
        }
        prop_assert!(colored_isomorphic(&t, Some(0), &colors, &u, Some(perm[0]), &moved).unwrap());
    }

    #[test]
    fn agrees_with_canonical_forms(seed in any::<u64>(), n in 2usize..120) {
        let mut rng = workload::rng(seed);
        let t = workload::random_shape(&mut rng, n);
        let Some(m) = workload::move_edge(&mut rng, &t) else { return Ok(()) };
        let want = common::canonical_free(&t, None) == common::canonical_free(&m, None);
        prop_assert_eq!(unrooted_isomorphic(&t, &m).unwrap(), want);
        let want_rooted =
            common::canonical_rooted(&t, 0, None) == common::canonical_rooted(&m, 0, None);
        for early_exit in [true, false] {
            let (got, _) = isomorphic(
                &IsoInput::rooted(&t, 0),
                &IsoInput::rooted(&m, 0),
                &IsoOptions { early_exit },
            )
            .unwrap();
            prop_assert_eq!(got, want_rooted);
        }
    }

    #[test]
    fn colored_agrees_with_canonical_forms(seed in any::<u64>(), n in 1usize..80) {
        let mut rng = workload::rng(seed);
        let t = workload::random_shape(&mut rng, n);
        let (u, _) = workload::relabel(&mut rng, &t);
        let c1 = workload::random_colors(&mut rng, n, 2);
        let c2 = workload::random_colors(&mut rng, n, 2);
        let want = common::canonical_free(&t, Some(&c1)) == common::canonical_free(&u, Some(&c2));
        prop_assert_eq!(colored_isomorphic(&t, None, &c1, &u, None, &c2).unwrap(), want);
    }
}
