use super::{Overlay, QueryTrace};
use crate::bits::{shared_popcount, BitSequence, IntVector, PopcountTable};
use crate::codec::{value_saturating, SdnSequence};
use crate::error::Result;
use crate::sort::{SortConfig, Sorter};

/// Dense rank: the number of distinct values smaller than `x`.
///
/// `B` marks every value `<= N` present in the sequence. It is cut into
/// frames of `h = ceil(tau/2)` bits and `P[f]` holds the number of marks
/// before frame `f`, so the rank of `x` is `P[x / h]` plus the popcount of
/// the first `x mod h` bits of its frame.
#[derive(Clone, Debug)]
pub struct DenseRankStructure {
    n: u64,
    h: usize,
    marks: BitSequence,
    prefix: IntVector,
    overlay: Overlay,
    distinct_small: usize,
    table: &'static PopcountTable,
}

impl DenseRankStructure {
    pub fn build(s: &SdnSequence) -> Result<Self> {
        Self::build_with(s, &SortConfig::for_bits(s.len_bits())?)
    }

    pub fn build_with(s: &SdnSequence, cfg: &SortConfig) -> Result<Self> {
        let n = s.len_bits() as u64;
        let h = cfg.digit_bits();
        let table = shared_popcount();
        let bits = s.bits();

        let mut marks = BitSequence::try_zeros(n as usize + 1)?;
        for cw in s.codewords() {
            let x = value_saturating(bits, cw);
            if x <= n {
                marks.set(x as usize, true);
            }
        }

        let frames = (n as usize + 1).div_ceil(h);
        let mut prefix = IntVector::for_max(frames, s.count() as u64);
        let mut running = 0u64;
        for f in 0..frames {
            prefix.set(f, running);
            let width = h.min(marks.len() - f * h);
            running += table.lookup(marks.get_bits(f * h, width)) as u64;
        }

        let mut sorter = Sorter::new();
        let overlay = Overlay::build(s, &mut sorter, h, n, running, true);
        Ok(Self {
            n,
            h,
            marks,
            prefix,
            overlay,
            distinct_small: running as usize,
            table,
        })
    }

    /// Dense rank of `x`, which starts at bit `p_x`. Numbers wider than 64
    /// bits are passed as `u64::MAX`.
    #[inline]
    pub fn rank(&self, p_x: usize, x: u64) -> u64 {
        self.rank_traced(p_x, x, &mut ())
    }

    pub fn rank_traced(&self, p_x: usize, x: u64, trace: &mut impl QueryTrace) -> u64 {
        if x > self.n {
            trace.frame();
            return self.overlay.get(p_x);
        }
        let x = x as usize;
        let (f, o) = (x / self.h, x % self.h);
        trace.frame();
        let head = self.marks.get_bits(f * self.h, o);
        trace.table();
        self.prefix.get(f) + self.table.lookup(head) as u64
    }

    /// Rank of the number starting at `p` in `s`, the sequence this
    /// structure was built from.
    pub fn rank_at(&self, s: &SdnSequence, p: usize) -> Result<u64> {
        let (x, _) = s.decode_saturating_at(p)?;
        Ok(self.rank(p, x))
    }

    /// Distinct values `<= N`.
    pub fn distinct_small(&self) -> usize {
        self.distinct_small
    }

    pub fn frame_bits(&self) -> usize {
        self.h
    }

    pub fn size_in_bits(&self) -> usize {
        self.marks.size_in_bits() + self.prefix.size_in_bits() + self.overlay.size_in_bits()
    }
}
