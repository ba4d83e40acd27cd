//! Fixed-length bit sequences.
//!
//! Bit `i` of a sequence lives in word `i / 64` at bit `63 - i % 64`, i.e.
//! the logically first bit is the most significant bit of the first word.
//! Multi-bit reads assemble bits left to right into the low bits of the
//! result, so `get_bits(p, w)` returns the `w`-bit number whose most
//! significant bit is bit `p`. Every codec, table and structure in the crate
//! uses this one convention.

use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitSequence {
    words: Vec<u64>,
    len: usize,
}

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

impl BitSequence {
    /// All-zero sequence of `len` bits, written in `O(len / w)` word stores.
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; words_for(len)],
            len,
        }
    }

    /// Like [`BitSequence::zeros`] but reports allocation failure instead of
    /// aborting.
    pub fn try_zeros(len: usize) -> Result<Self> {
        let n = words_for(len);
        let mut words = Vec::new();
        words
            .try_reserve_exact(n)
            .map_err(|_| Error::Resource { bits: len })?;
        words.resize(n, 0);
        Ok(Self { words, len })
    }

    /// Sequence of `len` one bits.
    pub fn ones(len: usize) -> Self {
        let mut s = Self {
            words: vec![u64::MAX; words_for(len)],
            len,
        };
        s.clear_tail();
        s
    }

    /// Parses a string of `0`/`1` characters; whitespace is ignored.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let bits: Vec<bool> = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Format(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<_>>()?;
        let mut seq = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                seq.set(i, true);
            }
        }
        Ok(seq)
    }

    /// Builds a sequence from big-endian bytes: bit 0 is the MSB of byte 0.
    pub fn from_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if bytes.len() != len.div_ceil(8) {
            return Err(Error::Format(format!(
                "expected {} payload bytes for {len} bits, got {}",
                len.div_ceil(8),
                bytes.len()
            )));
        }
        let mut words = vec![0u64; words_for(len)];
        for (i, chunk) in bytes.chunks(8).enumerate() {
            let mut buf = [0u8; 8];
            buf[..chunk.len()].copy_from_slice(chunk);
            words[i] = u64::from_be_bytes(buf);
        }
        let mut s = Self { words, len };
        if s.tail_dirty() {
            return Err(Error::Format("nonzero padding bits after the last payload bit".into()));
        }
        s.clear_tail();
        Ok(s)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len.div_ceil(8));
        for w in &self.words {
            out.extend_from_slice(&w.to_be_bytes());
        }
        out.truncate(self.len.div_ceil(8));
        out
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Heap footprint in bits.
    pub fn size_in_bits(&self) -> usize {
        self.words.capacity() * WORD
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        (self.words[i / WORD] >> (WORD - 1 - i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (WORD - 1 - i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    /// Reads `width <= 64` bits starting at `pos` as an unsigned number,
    /// most significant bit first.
    #[inline]
    pub fn get_bits(&self, pos: usize, width: usize) -> u64 {
        debug_assert!(width <= WORD);
        debug_assert!(pos + width <= self.len, "read {pos}+{width} past {}", self.len);
        if width == 0 {
            return 0;
        }
        let wi = pos / WORD;
        let off = pos % WORD;
        if off + width <= WORD {
            (self.words[wi] << off) >> (WORD - width)
        } else {
            let first = WORD - off;
            let rest = width - first;
            let hi = self.words[wi] & (u64::MAX >> off);
            let lo = self.words[wi + 1] >> (WORD - rest);
            (hi << rest) | lo
        }
    }

    /// Reads up to 64 bits starting at `pos`, zero-padding past the end.
    /// The result is left-aligned: bit `pos` is the MSB of the returned word.
    #[inline]
    pub fn word_at(&self, pos: usize) -> u64 {
        if pos >= self.len {
            return 0;
        }
        let wi = pos / WORD;
        let off = pos % WORD;
        let hi = self.words[wi] << off;
        if off == 0 || wi + 1 >= self.words.len() {
            hi
        } else {
            hi | (self.words[wi + 1] >> (WORD - off))
        }
    }

    /// Writes the low `width <= 64` bits of `value` at `pos`, MSB first.
    #[inline]
    pub fn set_bits(&mut self, pos: usize, width: usize, value: u64) {
        debug_assert!(width <= WORD);
        debug_assert!(pos + width <= self.len, "write {pos}+{width} past {}", self.len);
        if width == 0 {
            return;
        }
        debug_assert!(width == WORD || value >> width == 0, "value wider than {width} bits");
        let wi = pos / WORD;
        let off = pos % WORD;
        if off + width <= WORD {
            let shift = WORD - off - width;
            let mask = (u64::MAX >> (WORD - width)) << shift;
            self.words[wi] = (self.words[wi] & !mask) | ((value << shift) & mask);
        } else {
            let first = WORD - off;
            let rest = width - first;
            let mask_hi = u64::MAX >> off;
            self.words[wi] = (self.words[wi] & !mask_hi) | ((value >> rest) & mask_hi);
            let mask_lo = u64::MAX << (WORD - rest);
            self.words[wi + 1] = (self.words[wi + 1] & !mask_lo) | (value << (WORD - rest));
        }
    }

    /// Sets `len` bits starting at `pos` to `value`.
    pub fn fill(&mut self, pos: usize, len: usize, value: bool) {
        let pattern = if value { u64::MAX } else { 0 };
        let mut done = 0;
        while done < len {
            let w = (len - done).min(WORD);
            self.set_bits(pos + done, w, pattern >> (WORD - w));
            done += w;
        }
    }

    /// Length of the run of one bits starting at `pos`, stopping at the end
    /// of the sequence.
    #[inline]
    pub fn ones_run(&self, pos: usize) -> usize {
        let mut run = 0;
        loop {
            let at = pos + run;
            if at >= self.len {
                return run;
            }
            let avail = (self.len - at).min(WORD);
            let ones = (self.word_at(at).leading_ones() as usize).min(avail);
            run += ones;
            if ones < avail || avail < WORD {
                return run;
            }
        }
    }

    /// Copies `len` bits from `src[src_pos..]` into `self[dst_pos..]`.
    pub fn copy_from(&mut self, dst_pos: usize, src: &BitSequence, src_pos: usize, len: usize) {
        debug_assert!(src_pos + len <= src.len);
        debug_assert!(dst_pos + len <= self.len);
        let mut done = 0;
        // Align destination writes to word boundaries where possible.
        let head = ((WORD - dst_pos % WORD) % WORD).min(len);
        if head > 0 {
            self.set_bits(dst_pos, head, src.get_bits(src_pos, head));
            done = head;
        }
        while len - done >= WORD {
            let v = src.word_at(src_pos + done);
            self.words[(dst_pos + done) / WORD] = v;
            done += WORD;
        }
        if done < len {
            let w = len - done;
            self.set_bits(dst_pos + done, w, src.get_bits(src_pos + done, w));
        }
    }

    /// Compares two equally long bit ranges as unsigned numbers.
    pub fn cmp_ranges(
        &self,
        pos: usize,
        other: &BitSequence,
        other_pos: usize,
        len: usize,
    ) -> std::cmp::Ordering {
        let mut done = 0;
        while done < len {
            let w = (len - done).min(WORD);
            let a = self.get_bits(pos + done, w);
            let b = other.get_bits(other_pos + done, w);
            if a != b {
                return a.cmp(&b);
            }
            done += w;
        }
        std::cmp::Ordering::Equal
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Shrinks the logical length; dropped bits are cleared.
    pub fn truncate(&mut self, len: usize) {
        if len >= self.len {
            return;
        }
        self.len = len;
        self.words.truncate(words_for(len));
        self.clear_tail();
    }

    /// Resets to an all-zero sequence of `len` bits, reusing the allocation.
    pub fn reset(&mut self, len: usize) {
        self.words.clear();
        self.words.resize(words_for(len), 0);
        self.len = len;
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn tail_dirty(&self) -> bool {
        let used = self.len % WORD;
        used != 0 && self.words.last().is_some_and(|w| w & (u64::MAX >> used) != 0)
    }

    fn clear_tail(&mut self) {
        let used = self.len % WORD;
        if used != 0 {
            if let Some(w) = self.words.last_mut() {
                *w &= !(u64::MAX >> used);
            }
        }
    }
}

impl fmt::Display for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len <= 256 {
            write!(f, "BitSequence({self})")
        } else {
            write!(f, "BitSequence(len={})", self.len)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_fill_sizes() {
        assert!(BitSequence::zeros(0).is_empty());
        let one = BitSequence::zeros(1);
        assert_eq!(one.len(), 1);
        assert!(!one.get(0));
        let s = BitSequence::zeros(130);
        assert_eq!(s.len(), 130);
        assert_eq!(s.words().len(), 3);
        assert!(s.words().iter().all(|&w| w == 0));
    }

    #[test]
    fn msb_first_layout() {
        let s = BitSequence::from_bit_str("1011").unwrap();
        assert_eq!(s.words()[0] >> 60, 0b1011);
        assert_eq!(s.get_bits(0, 4), 0b1011);
        assert_eq!(s.get_bits(1, 3), 0b011);
        assert_eq!(s.to_bytes(), vec![0b1011_0000]);
    }

    #[test]
    fn cross_word_bits() {
        let mut s = BitSequence::zeros(200);
        s.set_bits(60, 10, 0b11_0101_1001);
        assert_eq!(s.get_bits(60, 10), 0b11_0101_1001);
        assert_eq!(s.get_bits(59, 12), 0b0110_1011_0010);
        s.set_bits(120, 64, 0xDEAD_BEEF_0123_4567);
        assert_eq!(s.get_bits(120, 64), 0xDEAD_BEEF_0123_4567);
    }

    #[test]
    fn ones_runs() {
        let mut s = BitSequence::zeros(300);
        s.fill(10, 150, true);
        assert_eq!(s.ones_run(10), 150);
        assert_eq!(s.ones_run(100), 60);
        assert_eq!(s.ones_run(160), 0);
        let t = BitSequence::ones(70);
        assert_eq!(t.ones_run(0), 70);
        assert_eq!(t.ones_run(69), 1);
        assert_eq!(t.ones_run(70), 0);
    }

    #[test]
    fn bytes_reject_dirty_padding() {
        assert!(BitSequence::from_bytes(&[0b1010_0001], 4).is_err());
        let s = BitSequence::from_bytes(&[0b1010_0000], 4).unwrap();
        assert_eq!(s.to_string(), "1010");
    }

    proptest! {
        #[test]
        fn set_then_get(len in 1usize..400, ops in prop::collection::vec((0usize..400, any::<bool>()), 1..50)) {
            let mut s = BitSequence::zeros(len);
            let mut shadow = vec![false; len];
            for (i, v) in ops {
                let i = i % len;
                s.set(i, v);
                shadow[i] = v;
            }
            for (i, &v) in shadow.iter().enumerate() {
                prop_assert_eq!(s.get(i), v);
            }
            prop_assert_eq!(s.count_ones(), shadow.iter().filter(|&&b| b).count());
        }

        #[test]
        fn copy_matches_bitwise(src_bits in prop::collection::vec(any::<bool>(), 0..300), sp in 0usize..300, dp in 0usize..300, len in 0usize..300) {
            let mut src = BitSequence::zeros(src_bits.len());
            for (i, &b) in src_bits.iter().enumerate() { src.set(i, b); }
            let sp = sp.min(src.len());
            let len = len.min(src.len() - sp);
            let mut dst = BitSequence::ones(dp + len + 7);
            dst.copy_from(dp, &src, sp, len);
            for i in 0..len {
                prop_assert_eq!(dst.get(dp + i), src.get(sp + i));
            }
            for i in 0..dp { prop_assert!(dst.get(i)); }
            for i in dp + len..dst.len() { prop_assert!(dst.get(i)); }
        }

        #[test]
        fn bytes_round_trip(bits in prop::collection::vec(any::<bool>(), 0..200)) {
            let mut s = BitSequence::zeros(bits.len());
            for (i, &b) in bits.iter().enumerate() { s.set(i, b); }
            prop_assert_eq!(BitSequence::from_bytes(&s.to_bytes(), s.len()).unwrap(), s);
        }
    }
}
