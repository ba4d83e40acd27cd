mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use sdn_core::tree::{
    tree_center, BalancedParens, ChoiceDictionary, ClassificationStore, HeightIterator, Tree,
    TreeInput,
};
use sdn_core::workload;

fn random_tree(seed: u64, n: usize) -> Tree {
    workload::random_shape(&mut workload::rng(seed), n)
}

/// Open position of every node, and the node at every open position.
fn positions(tree: &Tree, root: usize) -> (Vec<usize>, Vec<usize>) {
    let order = tree.preorder(root);
    let bp = BalancedParens::from_tree(tree, root).unwrap();
    let open: Vec<usize> = (0..tree.len()).map(|u| bp.open_pos(u)).collect();
    let mut by_pos = vec![usize::MAX; bp.len()];
    for (pre, &v) in order.iter().enumerate() {
        by_pos[open[pre]] = v;
    }
    (order, by_pos)
}

#[test]
fn navigation_matches_parent_array() {
    for seed in 0..30 {
        let n = 1 + (seed as usize * 37) % 300;
        let tree = random_tree(seed, n);
        let parent = common::parent_array(&tree, 0);
        let bp = BalancedParens::from_tree(&tree, 0).unwrap();
        let (_, node_at) = positions(&tree, 0);
        for i in 0..bp.len() {
            if !bp.is_open(i) {
                continue;
            }
            let v = node_at[i];
            let close = bp.findclose(i);
            assert_eq!(bp.findopen(close), i);
            assert_eq!(bp.subtree_size(i), (close - i).div_ceil(2));
            match bp.parent(i) {
                None => assert_eq!(v, 0),
                Some(p) => assert_eq!(node_at[p], parent[v]),
            }
            let kids: BTreeSet<usize> = bp.children(i).map(|c| node_at[c]).collect();
            let want: BTreeSet<usize> = tree
                .neighbors(v)
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| parent[w] == v && w != v)
                .collect();
            assert_eq!(kids, want);
            assert_eq!(bp.is_leaf(i), want.is_empty());
        }
    }
}

#[test]
fn parens_round_trip() {
    for p in ["()", "(())", "(()(()()))", "((((()))))"] {
        let bp = BalancedParens::from_parens(p).unwrap();
        assert_eq!(bp.to_parens(), p);
        assert_eq!(Tree::from_parens(p).unwrap().to_parens(0), p);
    }
    let path = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
    assert_eq!(BalancedParens::from_edge(&path, 1, 2).unwrap().to_parens(), "((())(()))");
    assert!(BalancedParens::from_edge(&path, 0, 2).is_err());
    for bad in ["", ")(", "(()", "()()", "(x)"] {
        assert!(BalancedParens::from_parens(bad).is_err(), "{bad}");
    }
}

#[test]
fn heights_match_recursion() {
    for seed in 0..60 {
        let n = 1 + (seed as usize * 131) % 2000;
        let tree = random_tree(seed, n);
        let want = common::heights(&tree, 0);
        let (_, node_at) = positions(&tree, 0);
        let bp = BalancedParens::from_tree(&tree, 0).unwrap();
        let mut it = HeightIterator::new(&bp);
        let mut seen = vec![false; n];
        let mut h = 0;
        while it.has_next() {
            for pos in it.next_level().unwrap().iter() {
                let v = node_at[pos];
                assert!(!seen[v]);
                seen[v] = true;
                assert_eq!(want[v], h);
            }
            h += 1;
        }
        assert!(seen.iter().all(|&s| s));
        assert!(it.work() <= 16 * n, "work {} for n = {n}", it.work());
    }
}

#[test]
fn centers_match_eccentricity() {
    for seed in 0..100 {
        let n = 1 + (seed as usize * 17) % 200;
        let tree = random_tree(seed, n);
        assert_eq!(tree_center(&tree).unwrap(), common::center_by_eccentricity(&tree));
    }
}

#[test]
fn store_slots_nest() {
    let tree = random_tree(9, 300);
    let bp = BalancedParens::from_tree(&tree, 0).unwrap();
    let store = ClassificationStore::new(&bp, None, 2).unwrap();
    for i in (0..bp.len()).filter(|&i| bp.is_open(i)) {
        let (s, e) = store.slot(i);
        assert_eq!(e - s, 6 * (2 * bp.subtree_size(i) - 1));
        let mut last = s;
        for c in bp.children(i) {
            let (cs, ce) = store.slot(c);
            assert!(last <= cs && ce <= e);
            last = ce;
        }
    }
}

#[test]
fn tree_text_formats() {
    let t = TreeInput::parse("# path\n4\n0 1\n1 2\n2 3\nroot 1\ncolors 0 1 1 0\n").unwrap();
    assert_eq!(t.root, Some(1));
    assert_eq!(t.colors, Some(vec![0, 1, 1, 0]));
    assert_eq!(TreeInput::parse(&t.to_edge_text()).unwrap(), t);

    let p = TreeInput::parse("(()())\n2 0 1\n").unwrap();
    assert_eq!(p.tree.len(), 3);
    assert_eq!(p.root, Some(0));

    for bad in ["", "3\n0 1\n", "3\n0 1\n0 1\n", "2\n0 5\n", "3\n0 1\n1 2\n2 0\n", "2\n0 1\ncolors 0\n"] {
        assert!(TreeInput::parse(bad).is_err(), "{bad:?}");
    }
}

#[derive(Debug, Clone)]
enum Op {
    Add(usize),
    Remove(usize),
}

proptest! {
    #[test]
    fn choice_dictionary_matches_set(
        universe in 1usize..5000,
        ops in prop::collection::vec((any::<bool>(), any::<usize>()), 0..400),
    ) {
        let ops: Vec<Op> = ops
            .into_iter()
            .map(|(add, i)| if add { Op::Add(i % universe) } else { Op::Remove(i % universe) })
            .collect();
        let mut dict = ChoiceDictionary::new(universe);
        let mut set = BTreeSet::new();
        for op in ops {
            match op {
                Op::Add(i) => prop_assert_eq!(dict.add(i), set.insert(i)),
                Op::Remove(i) => prop_assert_eq!(dict.remove(i), set.remove(&i)),
            }
            prop_assert_eq!(dict.len(), set.len());
            match dict.choice() {
                Some(c) => prop_assert!(set.contains(&c)),
                None => prop_assert!(set.is_empty()),
            }
        }
        prop_assert_eq!(dict.iter().collect::<Vec<_>>(), set.iter().copied().collect::<Vec<_>>());
    }

    #[test]
    fn excess_matches_scan(seed in any::<u64>(), n in 1usize..400) {
        let tree = random_tree(seed, n);
        let bp = BalancedParens::from_tree(&tree, 0).unwrap();
        let mut e = 0i64;
        for m in 0..=bp.len() {
            prop_assert_eq!(bp.excess(m), e);
            if m < bp.len() {
                e += if bp.is_open(m) { 1 } else { -1 };
            }
        }
    }
}
