//! Dense and competitive rank of the numbers of a sequence.
//!
//! Both structures are built for an `N`-bit sequence and answer a query for
//! a number `x` starting at bit `p_x` in `O(1)`. Numbers at most `N` go
//! through frame tables; larger ("big") numbers have their rank written
//! into an `N`-bit overlay at `p_x`, which is free because a big number's
//! codeword is longer than the rank.
//!
//! Querying a number that does not occur in the sequence is outside the
//! contract and returns an unspecified value.

mod competitive;
mod dense;

pub use competitive::CompetitiveRankStructure;
pub use dense::DenseRankStructure;

use std::cmp::Ordering;

use crate::bits::{bit_width, BitSequence};
use crate::codec::{cmp_codewords, codeword_at, value_saturating, SdnSequence};
use crate::sort::Sorter;

/// Receives one call per elementary step of a query.
pub trait QueryTrace {
    fn directory(&mut self) {}
    fn select(&mut self) {}
    fn frame(&mut self) {}
    fn table(&mut self) {}
}

impl QueryTrace for () {}

/// Counts the steps of the queries it is passed to.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounter {
    pub directory: usize,
    pub select: usize,
    pub frames: usize,
    pub tables: usize,
}

impl QueryTrace for QueryCounter {
    fn directory(&mut self) {
        self.directory += 1;
    }
    fn select(&mut self) {
        self.select += 1;
    }
    fn frame(&mut self) {
        self.frames += 1;
    }
    fn table(&mut self) {
        self.tables += 1;
    }
}

pub fn build_dense_rank(s: &SdnSequence) -> crate::Result<DenseRankStructure> {
    DenseRankStructure::build(s)
}

pub fn build_rank(s: &SdnSequence) -> crate::Result<CompetitiveRankStructure> {
    CompetitiveRankStructure::build(s)
}

/// Ranks of the numbers above `N`, stored at their own positions.
#[derive(Clone, Debug, Default)]
struct Overlay {
    bits: BitSequence,
    width: usize,
}

impl Overlay {
    /// `base` is the rank of the smallest big number. Dense ranks grow by
    /// one per distinct value; competitive ranks jump to `base` plus the
    /// number of big numbers before the first equal one.
    fn build(
        s: &SdnSequence,
        sorter: &mut Sorter,
        digit_bits: usize,
        n: u64,
        base: u64,
        dense: bool,
    ) -> Self {
        let bits = s.bits();
        let pos = sorter.sorted_positions(s, digit_bits, |cw| value_saturating(bits, cw) > n, None);
        let width = bit_width(n);
        if pos.is_empty() {
            return Self { bits: BitSequence::zeros(0), width };
        }
        let mut overlay = BitSequence::zeros(s.len_bits());
        let mut rank = base;
        let mut prev = None;
        for (i, p) in pos.iter().enumerate() {
            let cw = codeword_at(bits, p as usize, s.cursor()).expect("position from a sort");
            assert!(cw.len() > width, "big codeword must cover its overlay slot");
            if let Some(pc) = prev {
                if cmp_codewords(bits, pc, bits, cw) != Ordering::Equal {
                    rank = if dense { rank + 1 } else { base + i as u64 };
                }
            }
            overlay.set_bits(p as usize, width, rank);
            prev = Some(cw);
        }
        Self { bits: overlay, width }
    }

    #[inline]
    fn get(&self, p: usize) -> u64 {
        self.bits.get_bits(p, self.width)
    }

    fn size_in_bits(&self) -> usize {
        self.bits.size_in_bits()
    }
}

/// Yields `(value, multiplicity)` for the distinct numbers `<= n` of a
/// sorted sequence, in increasing order.
struct Runs<'a> {
    seq: &'a SdnSequence,
    iter: crate::codec::Codewords<'a>,
    pending: Option<u64>,
    n: u64,
}

impl<'a> Runs<'a> {
    fn new(sorted: &'a SdnSequence, n: u64) -> Self {
        Self {
            seq: sorted,
            iter: sorted.codewords(),
            pending: None,
            n,
        }
    }

    fn next_small(&mut self) -> Option<u64> {
        if let Some(v) = self.pending.take() {
            return Some(v);
        }
        let cw = self.iter.next()?;
        let v = value_saturating(self.seq.bits(), cw);
        (v <= self.n).then_some(v)
    }
}

impl Iterator for Runs<'_> {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        let v = self.next_small()?;
        let mut count = 1;
        while let Some(w) = self.next_small() {
            if w != v {
                self.pending = Some(w);
                break;
            }
            count += 1;
        }
        Some((v, count))
    }
}
