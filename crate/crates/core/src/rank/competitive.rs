use super::{Overlay, QueryTrace, Runs};
use crate::bits::{bit_width, shared_prefixsum, BitSequence, IntVector, PrefixSumTable, RankedBits};
use crate::codec::{encoded_length, write_codeword, SdnSequence};
use crate::error::Result;
use crate::sort::{SortConfig, Sorter};

/// Competitive rank: the number of elements smaller than `x`.
///
/// Values `<= N` are grouped into regions of `h = ceil(tau/2)` consecutive
/// values. For every region holding at least one value, the occurrence
/// counts of its `h` values are written as self-delimiting numbers into
/// `A`, with a start marker in `A'` for each. No codeword straddles an
/// `h`-bit frame of `A`; a count whose codeword is wider than a frame is
/// written as an all-ones marker frame followed by two frames holding the
/// count in binary. `P[f]` is the number of elements counted before frame
/// `f`. A query selects the start of `x`'s count and adds the prefix sum
/// of the counts before it in its frame.
#[derive(Clone, Debug)]
pub struct CompetitiveRankStructure {
    n: u64,
    h: usize,
    present: RankedBits,
    counts: BitSequence,
    starts: RankedBits,
    prefix: IntVector,
    overlay: Overlay,
    total_small: usize,
    table: &'static PrefixSumTable,
}

/// Frame-aligned placement of count codewords.
struct Packer {
    h: usize,
    cursor: usize,
}

impl Packer {
    /// Reserves room for a codeword of `len` bits; returns its start and
    /// whether it goes into a marker frame.
    fn place(&mut self, len: usize) -> (usize, bool) {
        let used = self.cursor % self.h;
        if len > self.h {
            if used != 0 {
                self.cursor += self.h - used;
            }
            let at = self.cursor;
            self.cursor += 3 * self.h;
            (at, true)
        } else {
            if used + len > self.h {
                self.cursor += self.h - used;
            }
            let at = self.cursor;
            self.cursor += len;
            (at, false)
        }
    }
}

/// Calls `emit(region, count)` for every value slot of every region that
/// holds a value, in increasing value order.
fn walk(sorted: &SdnSequence, n: u64, h: usize, mut emit: impl FnMut(usize, u64)) {
    let h = h as u64;
    let mut runs = Runs::new(sorted, n).peekable();
    while let Some(&(v, _)) = runs.peek() {
        let region = v / h;
        for x in region * h..(region + 1) * h {
            let count = match runs.peek() {
                Some(&(w, c)) if w == x => {
                    runs.next();
                    c
                }
                _ => 0,
            };
            emit(region as usize, count);
        }
    }
}

impl CompetitiveRankStructure {
    pub fn build(s: &SdnSequence) -> Result<Self> {
        Self::build_with(s, &SortConfig::for_bits(s.len_bits())?)
    }

    pub fn build_with(s: &SdnSequence, cfg: &SortConfig) -> Result<Self> {
        let n = s.len_bits() as u64;
        let h = cfg.digit_bits();
        let mut sorter = Sorter::new();
        let sorted = sorter.sort(s, cfg)?;

        // First pass: size of A.
        let mut packer = Packer { h, cursor: 0 };
        walk(&sorted, n, h, |_, c| {
            packer.place(encoded_length(c));
        });
        let len = packer.cursor.div_ceil(h) * h;

        let regions = (n as usize + 1).div_ceil(h);
        let mut present = BitSequence::try_zeros(regions)?;
        let mut counts = BitSequence::try_zeros(len)?;
        let mut starts = BitSequence::try_zeros(len)?;
        let frames = len / h;
        let mut prefix = IntVector::for_max(frames, s.count() as u64);

        let mut packer = Packer { h, cursor: 0 };
        let mut running = 0u64;
        let mut next_frame = 0;
        walk(&sorted, n, h, |region, c| {
            present.set(region, true);
            let (at, marker) = packer.place(encoded_length(c));
            while next_frame < packer.cursor.div_ceil(h) {
                prefix.set(next_frame, running);
                next_frame += 1;
            }
            starts.set(at, true);
            if marker {
                counts.fill(at, h, true);
                counts.set_bits(at + h, 2 * h, c);
            } else {
                write_codeword(&mut counts, at, c);
            }
            running += c;
        });
        debug_assert!(bit_width(s.count() as u64) <= 2 * h);

        let overlay = Overlay::build(s, &mut sorter, h, n, running, false);
        Ok(Self {
            n,
            h,
            present: RankedBits::new(present),
            counts,
            starts: RankedBits::new(starts),
            prefix,
            overlay,
            total_small: running as usize,
            table: shared_prefixsum(),
        })
    }

    /// Rank of `x`, which starts at bit `p_x`. Numbers wider than 64 bits
    /// are passed as `u64::MAX`.
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
        let (region, q) = (x / self.h, x % self.h);
        trace.directory();
        let ordinal = self.present.rank(region);
        trace.select();
        let p = self
            .starts
            .select(ordinal * self.h + q)
            .expect("value outside the sequence");
        let f = p / self.h;
        let frame_start = f * self.h;
        trace.frame();
        let frame = self.counts.get_bits(frame_start, self.h);
        let before = self.prefix.get(f);
        if frame == (1 << self.h) - 1 {
            // Marker frame: x's count is the first entry of the frame.
            return before;
        }
        let width = p - frame_start;
        trace.table();
        before + self.table.lookup(frame >> (self.h - width), width)
    }

    pub fn rank_at(&self, s: &SdnSequence, p: usize) -> Result<u64> {
        let (x, _) = s.decode_saturating_at(p)?;
        Ok(self.rank(p, x))
    }

    /// Elements `<= N`.
    pub fn total_small(&self) -> usize {
        self.total_small
    }

    pub fn size_in_bits(&self) -> usize {
        self.present.size_in_bits()
            + self.counts.size_in_bits()
            + self.starts.size_in_bits()
            + self.prefix.size_in_bits()
            + self.overlay.size_in_bits()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ranks(values: &[u64]) -> Vec<u64> {
        let s = SdnSequence::from_values(values);
        let r = CompetitiveRankStructure::build(&s).unwrap();
        s.iter().map(|(p, x)| r.rank(p, x)).collect()
    }

    fn oracle(values: &[u64]) -> Vec<u64> {
        values
            .iter()
            .map(|&x| values.iter().filter(|&&y| y < x).count() as u64)
            .collect()
    }

    #[test]
    fn six_nine_two_two_zero() {
        assert_eq!(ranks(&[6, 9, 2, 2, 0]), vec![3, 4, 1, 1, 0]);
    }

    #[test]
    fn copies_of_one_value() {
        assert_eq!(ranks(&[5; 9]), vec![0; 9]);
    }

    #[test]
    fn marker_frames() {
        // 300 zeros give a count codeword wider than a frame.
        let mut v = vec![0u64; 300];
        v.extend([1, 2, 2, 3, 1 << 30, 7]);
        assert_eq!(ranks(&v), oracle(&v));
        let mut v = vec![3u64; 200];
        v.extend(vec![4u64; 200]);
        v.push(2);
        assert_eq!(ranks(&v), oracle(&v));
    }

    #[test]
    fn packer_keeps_codewords_inside_frames() {
        let mut p = Packer { h: 5, cursor: 0 };
        assert_eq!(p.place(3), (0, false));
        assert_eq!(p.place(3), (5, false));
        assert_eq!(p.place(1), (8, false));
        assert_eq!(p.place(7), (10, true));
        assert_eq!(p.cursor, 25);
    }
}
