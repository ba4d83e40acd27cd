use num_bigint::BigUint;

use super::{
    codeword_at, encoded_length, encoded_length_big, value_big, value_saturating, value_u64,
    write_codeword, write_codeword_big, write_codeword_from, Codeword,
};
use crate::bits::BitSequence;
use crate::error::{Error, Result};

/// `k` self-delimiting numbers written back to back into an `N`-bit
/// sequence.
///
/// The writer appends at a cursor; decoding from bit 0 yields exactly
/// [`count`](Self::count) codewords ending at [`cursor`](Self::cursor).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SdnSequence {
    bits: BitSequence,
    count: usize,
    cursor: usize,
}

impl SdnSequence {
    /// Empty sequence that can hold `n_bits` bits of codewords.
    pub fn with_capacity(n_bits: usize) -> Self {
        Self {
            bits: BitSequence::zeros(n_bits),
            count: 0,
            cursor: 0,
        }
    }

    pub fn try_with_capacity(n_bits: usize) -> Result<Self> {
        Ok(Self {
            bits: BitSequence::try_zeros(n_bits)?,
            count: 0,
            cursor: 0,
        })
    }

    /// Sequence holding exactly `values`, with `N` equal to their total
    /// codeword length.
    pub fn from_values(values: &[u64]) -> Self {
        let n: usize = values.iter().map(|&x| encoded_length(x)).sum();
        let mut s = Self::with_capacity(n);
        for &x in values {
            s.push(x).expect("capacity computed from the values");
        }
        s
    }

    pub fn from_biguints(values: &[BigUint]) -> Self {
        let n: usize = values.iter().map(encoded_length_big).sum();
        let mut s = Self::with_capacity(n);
        for x in values {
            s.push_big(x).expect("capacity computed from the values");
        }
        s
    }

    /// Adopts an already written bit sequence holding `count` codewords that
    /// fill it exactly.
    pub fn from_bits(bits: BitSequence, count: usize) -> Result<Self> {
        let mut pos = 0;
        for _ in 0..count {
            pos = codeword_at(&bits, pos, bits.len())?.end();
        }
        if pos != bits.len() {
            return Err(Error::Corrupt {
                pos,
                reason: "codewords do not fill the sequence exactly",
            });
        }
        Ok(Self {
            bits,
            count,
            cursor: pos,
        })
    }

    /// Clears the sequence and resizes it to `n_bits`, reusing storage.
    pub fn reset(&mut self, n_bits: usize) {
        self.bits.reset(n_bits);
        self.count = 0;
        self.cursor = 0;
    }

    #[inline]
    pub fn bits(&self) -> &BitSequence {
        &self.bits
    }

    /// Capacity `N` in bits.
    #[inline]
    pub fn len_bits(&self) -> usize {
        self.bits.len()
    }

    /// Number of codewords written.
    #[inline]
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Next free bit.
    #[inline]
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.cursor
    }

    /// Drops unused capacity so that `N` equals the written length.
    pub fn seal(&mut self) {
        self.bits.truncate(self.cursor);
    }

    #[inline]
    fn reserve(&self, needed: usize) -> Result<usize> {
        if needed > self.remaining() {
            return Err(Error::ContainerFull {
                needed,
                available: self.remaining(),
            });
        }
        Ok(self.cursor)
    }

    /// Appends `x` and returns the position of its first bit.
    pub fn push(&mut self, x: u64) -> Result<usize> {
        let at = self.reserve(encoded_length(x))?;
        self.cursor = write_codeword(&mut self.bits, at, x);
        self.count += 1;
        Ok(at)
    }

    pub fn push_big(&mut self, x: &BigUint) -> Result<usize> {
        let at = self.reserve(encoded_length_big(x))?;
        self.cursor = write_codeword_big(&mut self.bits, at, x);
        self.count += 1;
        Ok(at)
    }

    /// Appends a copy of the codeword `cw` of `src`.
    #[inline]
    pub fn push_codeword(&mut self, src: &BitSequence, cw: Codeword) -> Result<usize> {
        let at = self.reserve(cw.len())?;
        self.bits.copy_from(at, src, cw.start, cw.len());
        self.cursor += cw.len();
        self.count += 1;
        Ok(at)
    }

    /// Appends the codeword whose payload is `payload_len` bits copied from
    /// `src[src_pos..]`.
    pub fn push_payload(
        &mut self,
        src: &BitSequence,
        src_pos: usize,
        payload_len: usize,
    ) -> Result<usize> {
        let at = self.reserve(super::codeword_len(payload_len))?;
        self.cursor = write_codeword_from(&mut self.bits, at, src, src_pos, payload_len);
        self.count += 1;
        Ok(at)
    }

    /// Starts a codeword with a `payload_len`-bit payload that the caller
    /// fills through [`PayloadWriter`]. The payload must begin with a one
    /// bit for the codeword to be canonical.
    pub fn begin_payload(&mut self, payload_len: usize) -> Result<PayloadWriter<'_>> {
        let at = self.reserve(super::codeword_len(payload_len))?;
        if payload_len == 0 {
            self.bits.set(at, false);
        } else {
            self.bits.fill(at, payload_len, true);
            self.bits.set(at + payload_len, false);
        }
        let start = at + if payload_len == 0 { 1 } else { payload_len + 1 };
        self.cursor = at + super::codeword_len(payload_len);
        self.count += 1;
        Ok(PayloadWriter {
            bits: &mut self.bits,
            pos: start,
            end: self.cursor,
        })
    }

    /// Parses the codeword starting at `p`.
    #[inline]
    pub fn codeword_at(&self, p: usize) -> Result<Codeword> {
        codeword_at(&self.bits, p, self.bits.len())
    }

    /// Decodes the number starting at `p`; returns it and the position after
    /// its codeword.
    pub fn decode_at(&self, p: usize) -> Result<(u64, usize)> {
        let cw = self.codeword_at(p)?;
        Ok((value_u64(&self.bits, cw)?, cw.end()))
    }

    pub fn decode_big_at(&self, p: usize) -> Result<(BigUint, usize)> {
        let cw = self.codeword_at(p)?;
        Ok((value_big(&self.bits, cw), cw.end()))
    }

    /// Decodes at `p`, saturating numbers wider than 64 bits to `u64::MAX`.
    pub fn decode_saturating_at(&self, p: usize) -> Result<(u64, usize)> {
        let cw = self.codeword_at(p)?;
        Ok((value_saturating(&self.bits, cw), cw.end()))
    }

    /// Codewords in storage order.
    pub fn codewords(&self) -> Codewords<'_> {
        Codewords {
            bits: &self.bits,
            pos: 0,
            left: self.count,
        }
    }

    /// `(position, value)` pairs in storage order. Values wider than 64 bits
    /// are saturated to `u64::MAX`; use [`Self::to_biguints`] for those.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.codewords()
            .map(move |cw| (cw.start, value_saturating(&self.bits, cw)))
    }

    pub fn to_vec(&self) -> Result<Vec<u64>> {
        self.codewords().map(|cw| value_u64(&self.bits, cw)).collect()
    }

    pub fn to_biguints(&self) -> Vec<BigUint> {
        self.codewords().map(|cw| value_big(&self.bits, cw)).collect()
    }

    pub fn into_bits(self) -> BitSequence {
        self.bits
    }

    pub(crate) fn set_written(&mut self, count: usize, cursor: usize) {
        self.count = count;
        self.cursor = cursor;
    }

    pub(crate) fn bits_mut(&mut self) -> &mut BitSequence {
        &mut self.bits
    }
}

/// Sequential writer for a payload reserved by [`SdnSequence::begin_payload`].
pub struct PayloadWriter<'a> {
    bits: &'a mut BitSequence,
    pos: usize,
    end: usize,
}

impl PayloadWriter<'_> {
    pub fn put_bits(&mut self, width: usize, value: u64) {
        assert!(self.pos + width <= self.end, "payload overrun");
        self.bits.set_bits(self.pos, width, value);
        self.pos += width;
    }

    pub fn put_codeword(&mut self, x: u64) {
        assert!(self.pos + encoded_length(x) <= self.end, "payload overrun");
        self.pos = write_codeword(self.bits, self.pos, x);
    }

    pub fn put_range(&mut self, src: &BitSequence, src_pos: usize, len: usize) {
        assert!(self.pos + len <= self.end, "payload overrun");
        self.bits.copy_from(self.pos, src, src_pos, len);
        self.pos += len;
    }

    pub fn remaining(&self) -> usize {
        self.end - self.pos
    }
}

impl Drop for PayloadWriter<'_> {
    fn drop(&mut self) {
        debug_assert_eq!(self.pos, self.end, "payload left partially written");
    }
}

pub struct Codewords<'a> {
    bits: &'a BitSequence,
    pos: usize,
    left: usize,
}

impl Iterator for Codewords<'_> {
    type Item = Codeword;

    #[inline]
    fn next(&mut self) -> Option<Codeword> {
        if self.left == 0 {
            return None;
        }
        let cw = codeword_at(self.bits, self.pos, self.bits.len())
            .expect("sequence invariant: count codewords are decodable");
        self.pos = cw.end();
        self.left -= 1;
        Some(cw)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.left, Some(self.left))
    }
}

impl ExactSizeIterator for Codewords<'_> {}
