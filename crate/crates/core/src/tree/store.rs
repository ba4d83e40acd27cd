use super::{BalancedParens, Tree};
use crate::bits::{BitSequence, RankedBits};
use crate::codec::{codeword_at, encoded_length, value_u64, write_codeword, SdnSequence};
use crate::error::{Error, Result};

/// Node colors in preorder, written as self-delimiting numbers back to back
/// with a start marker per node, so that both the color of node `u` and the
/// number of color bits before `u` are available in `O(1)`.
#[derive(Clone, Debug)]
pub struct PreorderColors {
    seq: SdnSequence,
    starts: RankedBits,
}

impl PreorderColors {
    /// `colors[v]` is the color of input node `v`; colors must be below `n`.
    pub fn from_tree(tree: &Tree, root: usize, colors: &[u64]) -> Result<Self> {
        Self::check(tree, colors)?;
        Self::collect(colors, 0, |visit| tree.dfs(root, visit, |_| {}))
    }

    /// Colors in the order of [`BalancedParens::from_edge`], with color 0
    /// for the added root.
    pub fn from_edge(tree: &Tree, a: usize, b: usize, colors: &[u64]) -> Result<Self> {
        Self::check(tree, colors)?;
        Self::collect(colors, 1, |mut visit| {
            tree.dfs_excluding(a, Some(b), &mut visit, |_| {});
            tree.dfs_excluding(b, Some(a), &mut visit, |_| {});
        })
    }

    fn check(tree: &Tree, colors: &[u64]) -> Result<()> {
        let n = tree.len();
        if colors.len() != n {
            return Err(Error::InvalidTree(format!(
                "{} colors given for {n} nodes",
                colors.len()
            )));
        }
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c >= n as u64) {
            return Err(Error::InvalidTree(format!(
                "color {c} of node {v} is not below n = {n}"
            )));
        }
        Ok(())
    }

    /// Writes `extra_zeros` zero colors, then the colors of the nodes that
    /// `walk` visits, in visiting order.
    fn collect(
        colors: &[u64],
        extra_zeros: usize,
        walk: impl FnOnce(&mut dyn FnMut(usize)),
    ) -> Result<Self> {
        let total: usize = extra_zeros + colors.iter().map(|&c| encoded_length(c)).sum::<usize>();
        let mut seq = SdnSequence::try_with_capacity(total)?;
        let mut starts = BitSequence::try_zeros(total + 1)?;
        for _ in 0..extra_zeros {
            let at = seq.push(0)?;
            starts.set(at, true);
        }
        walk(&mut |v| {
            let at = seq.push(colors[v]).expect("sized from the colors");
            starts.set(at, true);
        });
        starts.set(total, true);
        Ok(Self {
            seq,
            starts: RankedBits::new(starts),
        })
    }

    /// Colors already in preorder.
    pub fn from_preorder(colors: &[u64]) -> Result<Self> {
        let total: usize = colors.iter().map(|&c| encoded_length(c)).sum();
        let mut seq = SdnSequence::try_with_capacity(total)?;
        let mut starts = BitSequence::try_zeros(total + 1)?;
        for &c in colors {
            let at = seq.push(c)?;
            starts.set(at, true);
        }
        starts.set(total, true);
        Ok(Self {
            seq,
            starts: RankedBits::new(starts),
        })
    }

    /// Color of the node with preorder id `u`.
    pub fn color(&self, u: usize) -> u64 {
        self.seq.decode_at(self.offset(u)).expect("valid color codeword").0
    }

    /// Color bits of all nodes before `u` in preorder; `offset(n)` is the
    /// total.
    #[inline]
    pub fn offset(&self, u: usize) -> usize {
        self.starts.select(u).expect("node id out of range")
    }

    /// `(start, len)` of node `u`'s color codeword in [`Self::bits`].
    pub fn codeword(&self, u: usize) -> (usize, usize) {
        let p = self.offset(u);
        (p, self.offset(u + 1) - p)
    }

    pub fn bits(&self) -> &BitSequence {
        self.seq.bits()
    }

    pub fn size_in_bits(&self) -> usize {
        self.seq.bits().size_in_bits() + self.starts.size_in_bits()
    }
}

/// Bits per parenthesis in a node's slot.
pub const SLOT_BITS: usize = 6;
/// Extra slot bits per color bit when colors are present.
pub const COLOR_SLOT_FACTOR: usize = 2;

/// Stores a small tuple of numbers per node such that writing a node's
/// tuple may overwrite everything stored for its descendants.
///
/// Node `u` with parentheses at `u(` and `u)` owns the bits
/// `[6 u( + 2 E(u), 6 u) + 2 E(u'))`, where `E(v)` counts color bits of
/// nodes before `v` in preorder and `u'` is the first node after `u`'s
/// subtree (`E = 0` without colors). A node's slot contains the slots of
/// all its descendants and is disjoint from the slots of other subtrees.
#[derive(Clone, Debug)]
pub struct ClassificationStore<'a> {
    bp: &'a BalancedParens,
    colors: Option<&'a PreorderColors>,
    arity: usize,
    bits: BitSequence,
}

impl<'a> ClassificationStore<'a> {
    /// Store holding `arity` numbers per node.
    pub fn new(
        bp: &'a BalancedParens,
        colors: Option<&'a PreorderColors>,
        arity: usize,
    ) -> Result<Self> {
        assert!(arity >= 1);
        let extra = colors.map_or(0, |c| COLOR_SLOT_FACTOR * c.offset(bp.nodes()));
        Ok(Self {
            bp,
            colors,
            arity,
            bits: BitSequence::try_zeros(SLOT_BITS * bp.len() + extra)?,
        })
    }

    /// Bit range of the slot of the node opening at `pos`.
    pub fn slot(&self, pos: usize) -> (usize, usize) {
        let close = self.bp.findclose(pos);
        let (mut start, mut end) = (SLOT_BITS * pos, SLOT_BITS * close);
        if let Some(c) = self.colors {
            let u = self.bp.node_id(pos);
            let after = u + (close - pos).div_ceil(2);
            start += COLOR_SLOT_FACTOR * c.offset(u);
            end += COLOR_SLOT_FACTOR * c.offset(after);
        }
        (start, end)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Writes the tuple `values` for the node opening at `pos`.
    pub fn write(&mut self, pos: usize, values: &[u64]) -> Result<()> {
        assert_eq!(values.len(), self.arity, "tuple length must match arity");
        let (start, end) = self.slot(pos);
        let needed: usize = values.iter().map(|&x| encoded_length(x)).sum();
        if needed > end - start {
            return Err(Error::SlotOverflow {
                node: self.bp.node_id(pos),
                needed,
                available: end - start,
            });
        }
        let mut p = start;
        for &x in values {
            p = write_codeword(&mut self.bits, p, x);
        }
        Ok(())
    }

    /// Reads the tuple last written for the node opening at `pos` into
    /// `out`.
    pub fn read_into(&self, pos: usize, out: &mut [u64]) -> Result<()> {
        let (start, end) = self.slot(pos);
        let mut p = start;
        for slot in out.iter_mut().take(self.arity) {
            let cw = codeword_at(&self.bits, p, end)?;
            *slot = value_u64(&self.bits, cw)?;
            p = cw.end();
        }
        Ok(())
    }

    pub fn read(&self, pos: usize) -> Result<Vec<u64>> {
        let mut out = vec![0; self.arity];
        self.read_into(pos, &mut out)?;
        Ok(out)
    }

    /// `(start, len)` of the codewords stored for the node opening at `pos`.
    pub fn entry(&self, pos: usize) -> (usize, usize) {
        let start = SLOT_BITS * pos
            + self.colors.map_or(0, |c| {
                COLOR_SLOT_FACTOR * c.offset(self.bp.node_id(pos))
            });
        let mut p = start;
        for _ in 0..self.arity {
            p += crate::codec::codeword_len(self.bits.ones_run(p));
        }
        (start, p - start)
    }

    /// Stored bits of the node's children, left to right.
    pub fn vector(&self, pos: usize) -> BitSequence {
        let total: usize = self.bp.children(pos).map(|c| self.entry(c).1).sum();
        let mut out = BitSequence::zeros(total);
        let mut at = 0;
        for c in self.bp.children(pos) {
            let (s, len) = self.entry(c);
            out.copy_from(at, &self.bits, s, len);
            at += len;
        }
        out
    }

    pub fn bits(&self) -> &BitSequence {
        &self.bits
    }

    pub fn size_in_bits(&self) -> usize {
        self.bits.size_in_bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaf_and_vector() {
        let bp = BalancedParens::from_parens("(()())").unwrap();
        let mut store = ClassificationStore::new(&bp, None, 1).unwrap();
        store.write(1, &[0]).unwrap();
        assert_eq!(store.read(1).unwrap(), vec![0]);
        store.write(1, &[1]).unwrap();
        store.write(3, &[2]).unwrap();
        assert_eq!(store.vector(0).to_string(), "10111010");
        store.write(0, &[5]).unwrap();
        assert_eq!(store.read(0).unwrap(), vec![5]);
    }

    #[test]
    fn slot_bound_is_enforced() {
        let bp = BalancedParens::from_parens("()").unwrap();
        let mut store = ClassificationStore::new(&bp, None, 2).unwrap();
        assert_eq!(store.slot(0), (0, 6));
        store.write(0, &[1, 1]).unwrap();
        assert!(matches!(
            store.write(0, &[3, 1]),
            Err(Error::SlotOverflow { needed: 8, available: 6, .. })
        ));
    }

    #[test]
    fn color_offsets_nest() {
        let tree = Tree::from_parens("(()(()))").unwrap();
        let colors = PreorderColors::from_tree(&tree, 0, &[3, 0, 2, 1]).unwrap();
        assert_eq!(colors.color(0), 3);
        assert_eq!(colors.color(3), 1);
        assert_eq!(colors.offset(4), 5 + 1 + 5 + 3);
        let bp = BalancedParens::from_tree(&tree, 0).unwrap();
        let store = ClassificationStore::new(&bp, Some(&colors), 2).unwrap();
        let (rs, re) = store.slot(0);
        for pos in [1, 3, 4] {
            let (s, e) = store.slot(pos);
            assert!(rs <= s && e <= re && s < e);
        }
        assert!(store.slot(1).1 <= store.slot(3).0);
        assert!(PreorderColors::from_tree(&tree, 0, &[4, 0, 0, 0]).is_err());
    }
}
