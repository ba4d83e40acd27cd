//! Balanced parenthesis representation with navigation.
//!
//! Open parentheses are 1 bits. The excess `E(m)` is the number of opens
//! minus closes among the first `m` bits. Matching and enclosing
//! parentheses are found by searching for the nearest position where the
//! excess drops to a target: inside a 64-bit block by byte tables, across
//! blocks through a min-tree over per-block minima.

use super::Tree;
use crate::bits::{BitSequence, RankedBits};
use crate::error::{Error, Result};

const BLOCK: usize = 64;

/// Byte tables, bits read most significant first; opens count +1, closes -1.
struct ByteTables {
    total: [i8; 256],
    /// Minimum excess after 1..=8 bits.
    min_prefix: [i8; 256],
    /// Maximum sum over the last 1..=8 bits.
    max_suffix: [i8; 256],
}

const fn build_byte_tables() -> ByteTables {
    let mut t = ByteTables {
        total: [0; 256],
        min_prefix: [0; 256],
        max_suffix: [0; 256],
    };
    let mut b = 0;
    while b < 256 {
        let mut e = 0i8;
        let mut min = i8::MAX;
        let mut i = 0;
        while i < 8 {
            e += if (b >> (7 - i)) & 1 == 1 { 1 } else { -1 };
            if e < min {
                min = e;
            }
            i += 1;
        }
        t.total[b] = e;
        t.min_prefix[b] = min;
        let mut s = 0i8;
        let mut max = i8::MIN;
        let mut i = 0;
        while i < 8 {
            s += if (b >> i) & 1 == 1 { 1 } else { -1 };
            if s > max {
                max = s;
            }
            i += 1;
        }
        t.max_suffix[b] = max;
        b += 1;
    }
    t
}

static TABLES: ByteTables = build_byte_tables();

/// Min-tree over block minima of the excess.
#[derive(Clone, Debug)]
struct MinTree {
    leaves: usize,
    nodes: Vec<i32>,
}

impl MinTree {
    fn new(values: &[i32]) -> Self {
        let leaves = values.len().next_power_of_two();
        let mut nodes = vec![i32::MAX; 2 * leaves];
        nodes[leaves..leaves + values.len()].copy_from_slice(values);
        for i in (1..leaves).rev() {
            nodes[i] = nodes[2 * i].min(nodes[2 * i + 1]);
        }
        Self { leaves, nodes }
    }

    fn descend(&self, mut i: usize, target: i32, leftmost: bool) -> usize {
        while i < self.leaves {
            let (first, second) = if leftmost { (2 * i, 2 * i + 1) } else { (2 * i + 1, 2 * i) };
            i = if self.nodes[first] <= target { first } else { second };
        }
        i - self.leaves
    }

    /// Smallest block after `b` whose minimum is at most `target`.
    fn first_after(&self, b: usize, target: i32) -> Option<usize> {
        let mut i = self.leaves + b;
        while i > 1 {
            if i.is_multiple_of(2) && self.nodes[i + 1] <= target {
                return Some(self.descend(i + 1, target, true));
            }
            i /= 2;
        }
        None
    }

    /// Largest block before `b` whose minimum is at most `target`.
    fn last_before(&self, b: usize, target: i32) -> Option<usize> {
        let mut i = self.leaves + b;
        while i > 1 {
            if i % 2 == 1 && self.nodes[i - 1] <= target {
                return Some(self.descend(i - 1, target, false));
            }
            i /= 2;
        }
        None
    }

    fn size_in_bits(&self) -> usize {
        self.nodes.capacity() * 32
    }
}

/// An ordinal tree as `2n` balanced parentheses. Node ids are preorder
/// ranks; a node is addressed either by id or by the position of its open
/// parenthesis.
#[derive(Clone, Debug)]
pub struct BalancedParens {
    bits: RankedBits,
    mins: MinTree,
}

impl BalancedParens {
    /// Checks balance and a single root, then builds the index.
    pub fn new(bits: BitSequence) -> Result<Self> {
        let len = bits.len();
        if len == 0 || !bits.get(0) {
            return Err(Error::InvalidTree("sequence must start with '('".into()));
        }
        let mut e = 0i64;
        for i in 0..len {
            e += if bits.get(i) { 1 } else { -1 };
            if e < 0 || (e == 0 && i + 1 < len) {
                return Err(Error::InvalidTree(format!(
                    "parentheses unbalanced or not a single tree at position {i}"
                )));
            }
        }
        if e != 0 {
            return Err(Error::InvalidTree("parentheses are not balanced".into()));
        }
        Ok(Self::build(bits))
    }

    fn build(bits: BitSequence) -> Self {
        let len = bits.len();
        let blocks = len / BLOCK + 1;
        let mut minima = Vec::with_capacity(blocks);
        let mut e = 0i32;
        for b in 0..blocks {
            let mut min = e;
            let end = ((b + 1) * BLOCK).min(len);
            for i in b * BLOCK..end {
                e += if bits.get(i) { 1 } else { -1 };
                // E(i + 1) belongs to the next block when i + 1 == end.
                if i + 1 < (b + 1) * BLOCK {
                    min = min.min(e);
                }
            }
            minima.push(min);
        }
        Self {
            bits: RankedBits::new(bits),
            mins: MinTree::new(&minima),
        }
    }

    /// Parentheses of `tree` rooted at `root`, children in increasing id
    /// order.
    pub fn from_tree(tree: &Tree, root: usize) -> Result<Self> {
        if root >= tree.len() {
            return Err(Error::InvalidTree(format!("root {root} is not a node")));
        }
        let mut bits = BitSequence::try_zeros(2 * tree.len())?;
        let mut pos = 0;
        let cell = std::cell::RefCell::new((&mut bits, &mut pos));
        tree.dfs(
            root,
            |_| {
                let mut c = cell.borrow_mut();
                let p = *c.1;
                c.0.set(p, true);
                *c.1 += 1;
            },
            |_| *cell.borrow_mut().1 += 1,
        );
        Ok(Self::build(bits))
    }

    /// Parentheses of `tree` hung from the edge `{a, b}`: a new root whose
    /// children are `a` and `b`, each with its side of the tree. The result
    /// has `n + 1` nodes.
    pub fn from_edge(tree: &Tree, a: usize, b: usize) -> Result<Self> {
        if a >= tree.len() || !tree.neighbors(a).contains(&(b as u32)) {
            return Err(Error::InvalidTree(format!("({a}, {b}) is not an edge")));
        }
        let mut bits = BitSequence::try_zeros(2 * tree.len() + 2)?;
        bits.set(0, true);
        let mut pos = 1;
        let cell = std::cell::RefCell::new((&mut bits, &mut pos));
        for (root, skip) in [(a, b), (b, a)] {
            tree.dfs_excluding(
                root,
                Some(skip),
                |_| {
                    let mut c = cell.borrow_mut();
                    let p = *c.1;
                    c.0.set(p, true);
                    *c.1 += 1;
                },
                |_| *cell.borrow_mut().1 += 1,
            );
        }
        Ok(Self::build(bits))
    }

    pub fn from_parens(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bits = BitSequence::from_bit_str(&s.replace('(', "1").replace(')', "0"))
            .map_err(|_| Error::Format("expected only '(' and ')'".into()))?;
        Self::new(bits)
    }

    pub fn bits(&self) -> &BitSequence {
        self.bits.bits()
    }

    /// Number of nodes.
    #[inline]
    pub fn nodes(&self) -> usize {
        self.bits.len() / 2
    }

    /// Number of parentheses, `2n`.
    #[inline]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn is_open(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    /// `E(m)`: opens minus closes among the first `m` parentheses.
    #[inline]
    pub fn excess(&self, m: usize) -> i64 {
        2 * self.bits.rank(m) as i64 - m as i64
    }

    /// Preorder id of the node opening at `i`.
    #[inline]
    pub fn node_id(&self, i: usize) -> usize {
        self.bits.rank(i)
    }

    /// Open position of node `u`.
    #[inline]
    pub fn open_pos(&self, u: usize) -> usize {
        self.bits.select(u).expect("node id out of range")
    }

    /// Smallest `m > s` with `E(m) <= target`.
    fn forward(&self, s: usize, target: i64) -> Option<usize> {
        let bits = self.bits.bits();
        let len = bits.len();
        let mut e = self.excess(s);
        let mut t = s;
        let stop = ((s / BLOCK + 1) * BLOCK).min(len);
        if let Some(m) = scan_forward(bits, &mut t, stop, &mut e, target) {
            return Some(m);
        }
        let b = self.mins.first_after(s / BLOCK, target as i32)?;
        let start = b * BLOCK;
        let mut e = self.excess(start);
        if e <= target {
            return Some(start);
        }
        let mut t = start;
        scan_forward(bits, &mut t, (start + BLOCK).min(len), &mut e, target)
    }

    /// Largest `m < s` with `E(m) <= target`.
    fn backward(&self, s: usize, target: i64) -> Option<usize> {
        let bits = self.bits.bits();
        let block_start = s / BLOCK * BLOCK;
        let mut e = self.excess(s);
        if let Some(m) = scan_backward(bits, s, block_start, &mut e, target) {
            return Some(m);
        }
        let b = self.mins.last_before(s / BLOCK, target as i32)?;
        let end = (b + 1) * BLOCK;
        let mut e = self.excess(end);
        scan_backward(bits, end, b * BLOCK, &mut e, target)
    }

    /// Matching close of the open parenthesis at `i`.
    pub fn findclose(&self, i: usize) -> usize {
        debug_assert!(self.is_open(i));
        self.forward(i + 1, self.excess(i)).expect("balanced") - 1
    }

    /// Matching open of the close parenthesis at `j`.
    pub fn findopen(&self, j: usize) -> usize {
        debug_assert!(!self.is_open(j));
        self.backward(j, self.excess(j + 1)).expect("balanced")
    }

    /// Open position of the parent of the node opening at `i`, or `None`
    /// for the root.
    pub fn enclose(&self, i: usize) -> Option<usize> {
        debug_assert!(self.is_open(i));
        if i == 0 {
            return None;
        }
        self.backward(i, self.excess(i) - 1)
    }

    #[inline]
    pub fn parent(&self, i: usize) -> Option<usize> {
        self.enclose(i)
    }

    #[inline]
    pub fn is_leaf(&self, i: usize) -> bool {
        !self.bits.get(i + 1)
    }

    #[inline]
    pub fn first_child(&self, i: usize) -> Option<usize> {
        self.bits.get(i + 1).then_some(i + 1)
    }

    #[inline]
    pub fn right_sibling(&self, i: usize) -> Option<usize> {
        let j = self.findclose(i) + 1;
        (j < self.len() && self.bits.get(j)).then_some(j)
    }

    #[inline]
    pub fn left_sibling(&self, i: usize) -> Option<usize> {
        (i > 0 && !self.bits.get(i - 1)).then(|| self.findopen(i - 1))
    }

    /// Nodes in the subtree of the node opening at `i`, itself included.
    #[inline]
    pub fn subtree_size(&self, i: usize) -> usize {
        (self.findclose(i) - i).div_ceil(2)
    }

    /// Open positions of the children of the node opening at `i`.
    pub fn children(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.first_child(i), move |&c| self.right_sibling(c))
    }

    pub fn to_parens(&self) -> String {
        self.bits
            .bits()
            .iter()
            .map(|b| if b { '(' } else { ')' })
            .collect()
    }

    pub fn size_in_bits(&self) -> usize {
        self.bits.size_in_bits() + self.mins.size_in_bits()
    }
}

/// Advances over bits `t..stop` updating `e`; returns the first `m = t + 1`
/// with `E(m) <= target`.
#[inline]
fn scan_forward(
    bits: &BitSequence,
    t: &mut usize,
    stop: usize,
    e: &mut i64,
    target: i64,
) -> Option<usize> {
    while *t < stop {
        if (*t).is_multiple_of(8) && *t + 8 <= stop {
            let byte = bits.get_bits(*t, 8) as usize;
            if *e + (TABLES.min_prefix[byte] as i64) > target {
                *e += TABLES.total[byte] as i64;
                *t += 8;
                continue;
            }
        }
        *e += if bits.get(*t) { 1 } else { -1 };
        *t += 1;
        if *e <= target {
            return Some(*t);
        }
    }
    None
}

/// Walks back from `E(s)` (in `e`) over bits `s-1` down to `floor`; returns
/// the largest `m` in `[floor, s)` with `E(m) <= target`.
#[inline]
fn scan_backward(
    bits: &BitSequence,
    s: usize,
    floor: usize,
    e: &mut i64,
    target: i64,
) -> Option<usize> {
    let mut m = s;
    while m > floor {
        if m.is_multiple_of(8) && m - 8 >= floor {
            let byte = bits.get_bits(m - 8, 8) as usize;
            if *e - (TABLES.max_suffix[byte] as i64) > target {
                *e -= TABLES.total[byte] as i64;
                m -= 8;
                continue;
            }
        }
        m -= 1;
        *e -= if bits.get(m) { 1 } else { -1 };
        if *e <= target {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example() {
        let bp = BalancedParens::from_parens("(()())").unwrap();
        assert_eq!(bp.findclose(0), 5);
        assert_eq!(bp.findclose(1), 2);
        assert_eq!(bp.enclose(3), Some(0));
        assert_eq!(bp.enclose(0), None);
        assert_eq!(bp.findopen(4), 3);
        assert_eq!(bp.right_sibling(1), Some(3));
        assert_eq!(bp.left_sibling(3), Some(1));
        assert_eq!(bp.left_sibling(1), None);
        assert_eq!(bp.first_child(1), None);
        assert_eq!(bp.subtree_size(0), 3);
        assert_eq!(bp.node_id(3), 2);
        assert_eq!(bp.open_pos(2), 3);
    }

    #[test]
    fn rejects_bad_strings() {
        assert!(BalancedParens::from_parens("").is_err());
        assert!(BalancedParens::from_parens(")(").is_err());
        assert!(BalancedParens::from_parens("()()").is_err());
        assert!(BalancedParens::from_parens("(()").is_err());
    }

    fn stack_matches(s: &BitSequence) -> Vec<usize> {
        let mut m = vec![0; s.len()];
        let mut st = Vec::new();
        for i in 0..s.len() {
            if s.get(i) {
                st.push(i);
            } else {
                let o = st.pop().unwrap();
                m[o] = i;
                m[i] = o;
            }
        }
        m
    }

    #[test]
    fn deep_and_wide_against_stack() {
        // A long path followed by a wide star crosses many blocks.
        let mut s = String::from("(");
        s.push_str(&"(".repeat(300));
        s.push_str(&"()".repeat(500));
        s.push_str(&")".repeat(300));
        s.push(')');
        let bp = BalancedParens::from_parens(&s).unwrap();
        let m = stack_matches(bp.bits());
        let mut parent = vec![None; bp.len()];
        let mut st: Vec<usize> = Vec::new();
        for i in 0..bp.len() {
            if bp.is_open(i) {
                parent[i] = st.last().copied();
                st.push(i);
            } else {
                st.pop();
            }
        }
        for i in 0..bp.len() {
            if bp.is_open(i) {
                assert_eq!(bp.findclose(i), m[i]);
                assert_eq!(bp.enclose(i), parent[i], "i={i}");
            } else {
                assert_eq!(bp.findopen(i), m[i]);
            }
        }
    }
}
