//! Tree isomorphism in linear time and `O(n)` bits.
//!
//! Both trees are walked in lockstep by height. Every node of height `h`
//! receives a classification number `(h, q)`: the node's children's numbers
//! are sorted, written as one self-delimiting number per node into a
//! shared sequence `Z`, and `q` is the dense rank of the node's entry in
//! `Z`. Two nodes of the same height get equal numbers exactly if their
//! subtrees are isomorphic, so the trees are isomorphic exactly if the
//! roots end up with equal numbers.
//!
//! For colored trees each node's color is appended to its entry, and
//! leaves are classified through the same path.

use crate::codec::{codeword_len, SdnSequence};
use crate::error::{Error, Result};
use crate::rank::DenseRankStructure;
use crate::sort::{SortConfig, Sorter};
use crate::tree::{
    tree_center, BalancedParens, ClassificationStore, HeightIterator, PreorderColors, Tree,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsoOptions {
    /// Compare the multisets of classification numbers after every round
    /// and stop at the first difference. When off, only the roots are
    /// compared at the end.
    pub early_exit: bool,
}

impl Default for IsoOptions {
    fn default() -> Self {
        Self { early_exit: true }
    }
}

/// Counters collected during one test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsoStats {
    /// Rounds (heights) processed.
    pub rounds: usize,
    /// Total bits of all `Z` sequences.
    pub z_bits: usize,
    /// Total numbers passed to the per-node sorts.
    pub sorted_items: usize,
    /// Steps taken by both height iterators.
    pub iterator_work: usize,
    /// Rooted comparisons run.
    pub rooted_runs: usize,
}

/// One side of a comparison.
#[derive(Clone, Copy, Debug)]
pub struct IsoInput<'a> {
    pub tree: &'a Tree,
    /// `None` compares the trees as unrooted.
    pub root: Option<usize>,
    /// `colors[v]` for input node `v`, each below `n`.
    pub colors: Option<&'a [u64]>,
}

impl<'a> IsoInput<'a> {
    pub fn rooted(tree: &'a Tree, root: usize) -> Self {
        Self { tree, root: Some(root), colors: None }
    }

    pub fn unrooted(tree: &'a Tree) -> Self {
        Self { tree, root: None, colors: None }
    }

    pub fn with_colors(mut self, colors: &'a [u64]) -> Self {
        self.colors = Some(colors);
        self
    }
}

pub fn rooted_isomorphic(t1: &Tree, r1: usize, t2: &Tree, r2: usize) -> Result<bool> {
    isomorphic(&IsoInput::rooted(t1, r1), &IsoInput::rooted(t2, r2), &IsoOptions::default())
        .map(|r| r.0)
}

pub fn unrooted_isomorphic(t1: &Tree, t2: &Tree) -> Result<bool> {
    isomorphic(&IsoInput::unrooted(t1), &IsoInput::unrooted(t2), &IsoOptions::default())
        .map(|r| r.0)
}

/// Colored comparison; rooted if both roots are given, unrooted otherwise.
pub fn colored_isomorphic(
    t1: &Tree,
    r1: Option<usize>,
    c1: &[u64],
    t2: &Tree,
    r2: Option<usize>,
    c2: &[u64],
) -> Result<bool> {
    let a = IsoInput { tree: t1, root: r1, colors: Some(c1) };
    let b = IsoInput { tree: t2, root: r2, colors: Some(c2) };
    isomorphic(&a, &b, &IsoOptions::default()).map(|r| r.0)
}

/// Decides isomorphism of `a` and `b` and reports counters.
pub fn isomorphic(a: &IsoInput, b: &IsoInput, opts: &IsoOptions) -> Result<(bool, IsoStats)> {
    if a.root.is_some() != b.root.is_some() {
        return Err(Error::Precondition(
            "both trees must be rooted or both unrooted".into(),
        ));
    }
    if a.colors.is_some() != b.colors.is_some() {
        return Err(Error::Precondition(
            "both trees must be colored or both uncolored".into(),
        ));
    }
    for side in [a, b] {
        if let Some(c) = side.colors {
            if c.len() != side.tree.len() {
                return Err(Error::InvalidTree(format!(
                    "{} colors given for {} nodes",
                    c.len(),
                    side.tree.len()
                )));
            }
        }
        if let Some(r) = side.root {
            if r >= side.tree.len() {
                return Err(Error::InvalidTree(format!("root {r} is not a node")));
            }
        }
    }
    let mut stats = IsoStats::default();
    if a.tree.len() != b.tree.len() {
        return Ok((false, stats));
    }
    let (bp1, bp2, col1, col2) = match (a.root, b.root) {
        (Some(r1), Some(r2)) => (
            BalancedParens::from_tree(a.tree, r1)?,
            BalancedParens::from_tree(b.tree, r2)?,
            a.colors.map(|c| PreorderColors::from_tree(a.tree, r1, c)).transpose()?,
            b.colors.map(|c| PreorderColors::from_tree(b.tree, r2, c)).transpose()?,
        ),
        _ => {
            let c1 = tree_center(a.tree)?;
            let c2 = tree_center(b.tree)?;
            match (&c1[..], &c2[..]) {
                (&[r1], &[r2]) => (
                    BalancedParens::from_tree(a.tree, r1)?,
                    BalancedParens::from_tree(b.tree, r2)?,
                    a.colors.map(|c| PreorderColors::from_tree(a.tree, r1, c)).transpose()?,
                    b.colors.map(|c| PreorderColors::from_tree(b.tree, r2, c)).transpose()?,
                ),
                // Isomorphisms map the central edge onto the central edge,
                // so both trees are hung from it.
                (&[x1, y1], &[x2, y2]) => (
                    BalancedParens::from_edge(a.tree, x1, y1)?,
                    BalancedParens::from_edge(b.tree, x2, y2)?,
                    a.colors.map(|c| PreorderColors::from_edge(a.tree, x1, y1, c)).transpose()?,
                    b.colors.map(|c| PreorderColors::from_edge(b.tree, x2, y2, c)).transpose()?,
                ),
                _ => return Ok((false, stats)),
            }
        }
    };
    stats.rooted_runs += 1;
    let result = rooted_parens(&bp1, col1.as_ref(), &bp2, col2.as_ref(), opts, &mut stats)?;
    Ok((result, stats))
}

struct Side<'a> {
    bp: &'a BalancedParens,
    colors: Option<&'a PreorderColors>,
    store: ClassificationStore<'a>,
    iter: HeightIterator<'a>,
}

/// Scratch sequences reused across rounds and nodes.
#[derive(Default)]
struct Scratch {
    sorter: Sorter,
    x: SdnSequence,
    x_sorted: SdnSequence,
    z: SdnSequence,
    q: [SdnSequence; 2],
    q_sorted: [SdnSequence; 2],
}

/// Rooted comparison of two trees given as parentheses, optionally with
/// colors in preorder.
pub fn rooted_parens(
    a: &BalancedParens,
    ca: Option<&PreorderColors>,
    b: &BalancedParens,
    cb: Option<&PreorderColors>,
    opts: &IsoOptions,
    stats: &mut IsoStats,
) -> Result<bool> {
    if a.nodes() != b.nodes() {
        return Ok(false);
    }
    if ca.is_some() != cb.is_some() {
        return Err(Error::Precondition(
            "both trees must be colored or both uncolored".into(),
        ));
    }
    let mut sides = [
        Side {
            bp: a,
            colors: ca,
            store: ClassificationStore::new(a, ca, 2)?,
            iter: HeightIterator::new(a),
        },
        Side {
            bp: b,
            colors: cb,
            store: ClassificationStore::new(b, cb, 2)?,
            iter: HeightIterator::new(b),
        },
    ];
    let mut scratch = Scratch::default();
    let mut h = 0u64;
    let result = loop {
        match (sides[0].iter.has_next(), sides[1].iter.has_next()) {
            (false, false) => break None,
            (true, true) => {}
            // Different heights.
            _ => break Some(false),
        }
        let n0 = sides[0].iter.next_level()?.len();
        let n1 = sides[1].iter.next_level()?.len();
        stats.rounds += 1;
        if opts.early_exit && n0 != n1 {
            break Some(false);
        }
        if h == 0 && ca.is_none() {
            for side in sides.iter_mut() {
                let level = side.iter.current();
                for u in level.iter() {
                    side.store.write(u, &[0, 0])?;
                }
            }
        } else if !classify_round(&mut sides, h, &mut scratch, opts, stats)? {
            break Some(false);
        }
        h += 1;
    };
    stats.iterator_work += sides[0].iter.work() + sides[1].iter.work();
    if let Some(r) = result {
        return Ok(r);
    }
    Ok(sides[0].store.read(0)? == sides[1].store.read(0)?)
}

/// Length of the wrapped entry of a child: `1` followed by its stored
/// codewords.
#[inline]
fn child_payload(side: &Side, c: usize) -> usize {
    1 + side.store.entry(c).1
}

fn color_len(side: &Side, u: usize) -> usize {
    side.colors
        .map_or(0, |c| c.codeword(side.bp.node_id(u)).1)
}

/// Computes `(h, q)` for the current level of both trees. Returns `false`
/// if early exit found differing multisets.
fn classify_round(
    sides: &mut [Side; 2],
    h: u64,
    s: &mut Scratch,
    opts: &IsoOptions,
    stats: &mut IsoStats,
) -> Result<bool> {
    // Size Z.
    let mut z_bits = 0;
    let mut entries = 0;
    for side in sides.iter() {
        for u in side.iter.current().iter() {
            let x_bits: usize = side
                .bp
                .children(u)
                .map(|c| codeword_len(child_payload(side, c)))
                .sum();
            z_bits += codeword_len(1 + x_bits + color_len(side, u));
            entries += 1;
        }
    }
    s.z.reset(z_bits);

    // One entry per node: 1, the sorted wrapped child entries, the color.
    for side in sides.iter() {
        for u in side.iter.current().iter() {
            let x_bits: usize = side
                .bp
                .children(u)
                .map(|c| codeword_len(child_payload(side, c)))
                .sum();
            s.x.reset(x_bits);
            for c in side.bp.children(u) {
                let (start, len) = side.store.entry(c);
                let mut w = s.x.begin_payload(1 + len)?;
                w.put_bits(1, 1);
                w.put_range(side.store.bits(), start, len);
            }
            stats.sorted_items += s.x.count();
            let sorted = if s.x.count() > 1 {
                let cfg = SortConfig::for_bits(s.x.len_bits())?;
                s.sorter.sort_into(&s.x, &cfg, &mut s.x_sorted);
                &s.x_sorted
            } else {
                &s.x
            };
            let color = side.colors.map(|c| c.codeword(side.bp.node_id(u)));
            let mut w = s.z.begin_payload(1 + x_bits + color.map_or(0, |c| c.1))?;
            w.put_bits(1, 1);
            w.put_range(sorted.bits(), 0, x_bits);
            if let (Some((start, len)), Some(c)) = (color, side.colors) {
                w.put_range(c.bits(), start, len);
            }
        }
    }
    stats.z_bits += z_bits;

    let dense = DenseRankStructure::build(&s.z)?;
    let q_width = crate::codec::encoded_length(entries as u64);
    let mut p = 0;
    for (i, side) in sides.iter_mut().enumerate() {
        let level_len = side.iter.current().len();
        if opts.early_exit {
            s.q[i].reset(level_len * q_width);
        }
        let mut cursor = side.iter.current().next_member(0);
        while let Some(u) = cursor {
            cursor = side.iter.current().next_member(u + 1);
            let (x, next) = s.z.decode_saturating_at(p)?;
            let q = dense.rank(p, x);
            side.store.write(u, &[h, q])?;
            if opts.early_exit {
                s.q[i].push(q)?;
            }
            p = next;
        }
    }
    if opts.early_exit {
        for i in 0..2 {
            let cfg = SortConfig::for_bits(s.q[i].len_bits())?;
            let (q, q_sorted) = (&s.q[i], &mut s.q_sorted[i]);
            s.sorter.sort_into(q, &cfg, q_sorted);
        }
        let (a, b) = (&s.q_sorted[0], &s.q_sorted[1]);
        if a.cursor() != b.cursor()
            || a.bits().cmp_ranges(0, b.bits(), 0, a.cursor()) != std::cmp::Ordering::Equal
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: &str) -> Tree {
        Tree::from_parens(p).unwrap()
    }

    #[test]
    fn rooted_small() {
        assert!(rooted_isomorphic(&t("(()(()))"), 0, &t("((())())"), 0).unwrap());
        assert!(!rooted_isomorphic(&t("(()()())"), 0, &t("((())())"), 0).unwrap());
        assert!(rooted_isomorphic(&t("()"), 0, &t("()"), 0).unwrap());
        assert!(!rooted_isomorphic(&t("((()))"), 0, &t("(()())"), 0).unwrap());
    }

    #[test]
    fn same_level_sizes_but_different_shapes() {
        let a = t("((()())(()))");
        let b = t("((()()())())");
        assert!(!rooted_isomorphic(&a, 0, &b, 0).unwrap());
        for early_exit in [true, false] {
            let opts = IsoOptions { early_exit };
            let (r, _) =
                isomorphic(&IsoInput::rooted(&a, 0), &IsoInput::rooted(&a, 0), &opts).unwrap();
            assert!(r);
        }
    }

    #[test]
    fn unrooted_paths() {
        let p = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let q = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = Tree::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(unrooted_isomorphic(&p, &q).unwrap());
        assert!(!unrooted_isomorphic(&p, &star).unwrap());
    }

    #[test]
    fn colors_matter() {
        let a = t("(()())");
        assert!(colored_isomorphic(&a, Some(0), &[0, 1, 2], &a, Some(0), &[0, 2, 1]).unwrap());
        assert!(!colored_isomorphic(&a, Some(0), &[0, 1, 2], &a, Some(0), &[1, 1, 2]).unwrap());
        assert!(!colored_isomorphic(&a, Some(0), &[0, 1, 1], &a, Some(0), &[0, 1, 2]).unwrap());
    }
}
