//! Reference implementations used as oracles. Deliberately naive: strings,
//! big integers, recursion, and quadratic scans.
#![allow(dead_code)]

use std::collections::VecDeque;

use num_bigint::BigUint;
use sdn_core::tree::Tree;

/// Textbook codeword: `0` for zero, else `1^l 0` followed by the `l`-bit
/// binary form of `x`.
pub fn codeword_string(x: &BigUint) -> String {
    if x.bits() == 0 {
        return "0".into();
    }
    let bin = x.to_str_radix(2);
    format!("{}0{}", "1".repeat(bin.len()), bin)
}

/// Indices of `values` in stable sorted order.
pub fn stable_order(values: &[BigUint]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].cmp(&values[b]));
    idx
}

pub fn dense_rank_scan(values: &[BigUint], x: &BigUint) -> u64 {
    let mut smaller: Vec<&BigUint> = values.iter().filter(|v| *v < x).collect();
    smaller.sort();
    smaller.dedup();
    smaller.len() as u64
}

pub fn rank_scan(values: &[BigUint], x: &BigUint) -> u64 {
    values.iter().filter(|v| *v < x).count() as u64
}

fn children(tree: &Tree, parent: &[usize], u: usize) -> Vec<usize> {
    tree.neighbors(u)
        .iter()
        .map(|&v| v as usize)
        .filter(|&v| parent[v] == u && v != u)
        .collect()
}

/// Parent array for `tree` hung from `root` (BFS).
pub fn parent_array(tree: &Tree, root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; tree.len()];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in tree.neighbors(u) {
            let v = v as usize;
            if parent[v] == usize::MAX {
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    parent
}

/// Height of every node, by plain recursion.
pub fn heights(tree: &Tree, root: usize) -> Vec<usize> {
    fn go(tree: &Tree, parent: &[usize], u: usize, out: &mut [usize]) -> usize {
        let h = children(tree, parent, u)
            .into_iter()
            .map(|c| go(tree, parent, c, out) + 1)
            .max()
            .unwrap_or(0);
        out[u] = h;
        h
    }
    let parent = parent_array(tree, root);
    let mut out = vec![0; tree.len()];
    go(tree, &parent, root, &mut out);
    out
}

pub fn bfs_distances(tree: &Tree, from: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; tree.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &v in tree.neighbors(u) {
            let v = v as usize;
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Nodes of minimum eccentricity, from all-pairs BFS.
pub fn center_by_eccentricity(tree: &Tree) -> Vec<usize> {
    let ecc: Vec<usize> = (0..tree.len())
        .map(|u| *bfs_distances(tree, u).iter().max().unwrap())
        .collect();
    let best = *ecc.iter().min().unwrap();
    (0..tree.len()).filter(|&u| ecc[u] == best).collect()
}

/// AHU canonical string of the subtree at `root`, with colors if given.
pub fn canonical_rooted(tree: &Tree, root: usize, colors: Option<&[u64]>) -> String {
    fn go(tree: &Tree, parent: &[usize], u: usize, colors: Option<&[u64]>) -> String {
        let mut parts: Vec<String> = children(tree, parent, u)
            .into_iter()
            .map(|c| go(tree, parent, c, colors))
            .collect();
        parts.sort();
        let color = colors.map_or(String::new(), |c| c[u].to_string());
        format!("({color}{})", parts.concat())
    }
    let parent = parent_array(tree, root);
    go(tree, &parent, root, colors)
}

/// Canonical string of an unrooted tree: the smallest rooted form over its
/// centers.
pub fn canonical_free(tree: &Tree, colors: Option<&[u64]>) -> String {
    center_by_eccentricity(tree)
        .into_iter()
        .map(|c| canonical_rooted(tree, c, colors))
        .min()
        .unwrap()
}

/// Tree from a Prüfer sequence over `0..n`, `n = seq.len() + 2`.
pub fn from_pruefer(seq: &[usize]) -> Tree {
    let n = seq.len() + 2;
    let mut degree = vec![1; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges).unwrap()
}

/// One representative per isomorphism class of free trees on `n` nodes.
pub fn free_trees(n: usize) -> Vec<Tree> {
    if n <= 2 {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        return vec![Tree::from_edges(n, &edges).unwrap()];
    }
    let mut seen = std::collections::BTreeMap::new();
    let mut seq = vec![0; n - 2];
    loop {
        let t = from_pruefer(&seq);
        seen.entry(canonical_free(&t, None)).or_insert(t);
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
        seq[i] += 1;
    }
    seen.into_values().collect()
}
