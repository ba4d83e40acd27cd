//! Seeded input generators for tests and benchmarks.

use num_bigint::{BigUint, RandBigInt};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codec::{encoded_length, SdnSequence};
use crate::tree::Tree;

/// The generator used everywhere, so seeds mean the same thing in the
/// CLI, tests, and benchmarks.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A value whose bit length is uniform in `0..=max_bits`.
pub fn random_value(rng: &mut impl Rng, max_bits: u32) -> u64 {
    let bits = rng.gen_range(0..=max_bits.min(64));
    match bits {
        0 => 0,
        64 => rng.gen(),
        b => rng.gen_range(1u64 << (b - 1)..1u64 << b),
    }
}

/// `k` values mixing small numbers with some up to `max_big_bits` bits.
pub fn random_mixed_values(
    rng: &mut impl Rng,
    k: usize,
    max_big_bits: u64,
    big_fraction: f64,
) -> Vec<BigUint> {
    (0..k)
        .map(|_| {
            if rng.gen_bool(big_fraction) {
                let bits = rng.gen_range(1..=max_big_bits);
                rng.gen_biguint(bits)
            } else {
                BigUint::from(random_value(rng, 12))
            }
        })
        .collect()
}

/// A sequence of small values (bit lengths uniform in `0..=max_bits`) that
/// fills as close to `n_bits` bits as possible; the result is sealed, so
/// its length may fall a few bits short.
pub fn random_sequence(rng: &mut impl Rng, n_bits: usize, max_bits: u32) -> SdnSequence {
    let mut values = Vec::new();
    let mut used = 0;
    loop {
        let x = random_value(rng, max_bits);
        let len = encoded_length(x);
        if used + len > n_bits {
            // Top up with zeros, one bit each.
            values.extend(std::iter::repeat_n(0, n_bits - used));
            break;
        }
        used += len;
        values.push(x);
    }
    SdnSequence::from_values(&values)
}

/// Values uniform in `0..bound` filling `n_bits` bits as in
/// [`random_sequence`]. Most values share the top few bit lengths, so a
/// sort sees one or two large areas.
pub fn uniform_sequence(rng: &mut impl Rng, n_bits: usize, bound: u64) -> SdnSequence {
    let mut values = Vec::new();
    let mut used = 0;
    loop {
        let x = rng.gen_range(0..bound.max(1));
        let len = encoded_length(x);
        if used + len > n_bits {
            values.extend(std::iter::repeat_n(0, n_bits - used));
            break;
        }
        used += len;
        values.push(x);
    }
    SdnSequence::from_values(&values)
}

/// A random tree on `n` nodes where node `i > 0` hangs below a uniformly
/// chosen node among the previous `window` ones. A window of `n` gives
/// random recursive trees (height about `ln n`), small windows give deep
/// trees.
pub fn random_tree(rng: &mut impl Rng, n: usize, window: usize) -> Tree {
    let window = window.max(1);
    let edges: Vec<_> = (1..n)
        .map(|i| (rng.gen_range(i.saturating_sub(window)..i), i))
        .collect();
    Tree::from_edges(n.max(1), &edges).expect("generated edges form a tree")
}

/// A tree on `n` nodes with a random mix of shallow and deep parts.
pub fn random_shape(rng: &mut impl Rng, n: usize) -> Tree {
    let window = match rng.gen_range(0..4) {
        0 => 1 + rng.gen_range(0..4),
        1 => 1 + rng.gen_range(0..32),
        _ => n,
    };
    random_tree(rng, n, window)
}

/// Random permutation of `0..n`.
pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// The tree with its nodes renamed by a random permutation. Since children
/// are ordered by label, this also shuffles child orders. Returns the
/// permutation too (`old -> new`).
pub fn relabel(rng: &mut impl Rng, tree: &Tree) -> (Tree, Vec<usize>) {
    let perm = random_permutation(rng, tree.len());
    (tree.relabel(&perm).expect("permutation keeps a tree"), perm)
}

/// Colors below `n`, drawn from `palette` distinct values.
pub fn random_colors(rng: &mut impl Rng, n: usize, palette: usize) -> Vec<u64> {
    let palette = palette.clamp(1, n.max(1));
    (0..n).map(|_| rng.gen_range(0..palette) as u64).collect()
}

/// Parent of every node when the tree hangs from `root`; the root maps to
/// itself.
pub fn parents(tree: &Tree, root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; tree.len()];
    parent[root] = root;
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        for &v in tree.neighbors(u) {
            let v = v as usize;
            if parent[v] == usize::MAX {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    parent
}

/// Detaches a random non-root subtree (rooted at 0) and attaches it below a
/// random node outside it. Returns `None` for trees with fewer than three
/// nodes.
pub fn move_edge(rng: &mut impl Rng, tree: &Tree) -> Option<Tree> {
    let n = tree.len();
    if n < 3 {
        return None;
    }
    let parent = parents(tree, 0);
    for _ in 0..64 {
        let v = rng.gen_range(1..n);
        let in_subtree = |mut u: usize| loop {
            if u == v {
                return true;
            }
            if u == 0 {
                return false;
            }
            u = parent[u];
        };
        let outside: Vec<usize> = (0..n).filter(|&u| u != parent[v] && !in_subtree(u)).collect();
        let Some(&w) = outside.choose(rng) else {
            continue;
        };
        let edges: Vec<_> = tree
            .edges()
            .map(|(a, b)| if (a, b) == (v, parent[v]) || (b, a) == (v, parent[v]) { (v, w) } else { (a, b) })
            .collect();
        return Some(Tree::from_edges(n, &edges).expect("moving a subtree keeps a tree"));
    }
    None
}

/// Benchmark input for sorting: `n_bits` bits of values below `2^24`.
pub fn sort_bench_input(n_bits: usize, seed: u64) -> SdnSequence {
    uniform_sequence(&mut rng(seed), n_bits, 1 << 24)
}

/// Benchmark input for rank structures: values up to about `N`.
pub fn rank_bench_input(n_bits: usize, seed: u64) -> SdnSequence {
    let width = usize::BITS - n_bits.leading_zeros();
    random_sequence(&mut rng(seed), n_bits, width)
}

/// Benchmark input for isomorphism: a random recursive tree on `n` nodes
/// and a relabeled copy.
pub fn iso_bench_input(n: usize, seed: u64) -> (Tree, Tree) {
    let mut rng = rng(seed);
    let t = random_tree(&mut rng, n, n);
    let (u, _) = relabel(&mut rng, &t);
    (t, u)
}
