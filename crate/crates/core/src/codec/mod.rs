//! Self-delimiting numbers.
//!
//! `0` is written as the single bit `0`; any `x > 0` is written as
//! `1^l 0 bin(x)` where `bin(x)` is the binary representation of `x`
//! without leading zeros and `l = |bin(x)|`. Codewords are prefix-free, so a
//! concatenation decodes left to right without delimiters.

mod container;
mod sequence;

pub use container::{read_container, write_container, CONTAINER_MAGIC, CONTAINER_VERSION};
pub use sequence::{Codewords, PayloadWriter, SdnSequence};

use num_bigint::BigUint;

use crate::bits::{bit_width, BitSequence};

/// Location of one codeword inside a bit sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Codeword {
    /// First bit of the codeword.
    pub start: usize,
    /// Length `l` of the binary payload; 0 for the value 0.
    pub payload_len: usize,
}

impl Codeword {
    #[inline]
    pub fn len(&self) -> usize {
        codeword_len(self.payload_len)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn end(&self) -> usize {
        self.start + self.len()
    }

    #[inline]
    pub fn payload_start(&self) -> usize {
        self.start + self.payload_len + 1
    }
}

/// Codeword length for a payload of `l` bits.
#[inline]
pub fn codeword_len(payload_len: usize) -> usize {
    if payload_len == 0 {
        1
    } else {
        2 * payload_len + 1
    }
}

/// `|encode(x)|`: 1 for zero, otherwise `2 floor(log2 x) + 3`.
#[inline]
pub fn encoded_length(x: u64) -> usize {
    codeword_len(bit_width(x))
}

pub fn encoded_length_big(x: &BigUint) -> usize {
    codeword_len(x.bits() as usize)
}

/// Writes the codeword of `x` at `pos` and returns the position after it.
#[inline]
pub fn write_codeword(bits: &mut BitSequence, pos: usize, x: u64) -> usize {
    let l = bit_width(x);
    if l == 0 {
        bits.set(pos, false);
        return pos + 1;
    }
    bits.fill(pos, l, true);
    bits.set(pos + l, false);
    bits.set_bits(pos + l + 1, l, x);
    pos + 2 * l + 1
}

/// Writes a codeword whose payload is `payload_len` bits copied from
/// `src[src_pos..]`. The payload is taken verbatim.
pub fn write_codeword_from(
    bits: &mut BitSequence,
    pos: usize,
    src: &BitSequence,
    src_pos: usize,
    payload_len: usize,
) -> usize {
    if payload_len == 0 {
        bits.set(pos, false);
        return pos + 1;
    }
    bits.fill(pos, payload_len, true);
    bits.set(pos + payload_len, false);
    bits.copy_from(pos + payload_len + 1, src, src_pos, payload_len);
    pos + 2 * payload_len + 1
}

pub fn write_codeword_big(bits: &mut BitSequence, pos: usize, x: &BigUint) -> usize {
    let l = x.bits() as usize;
    if l == 0 {
        bits.set(pos, false);
        return pos + 1;
    }
    bits.fill(pos, l, true);
    bits.set(pos + l, false);
    // Write 64-bit digits from least significant upwards.
    let digits = x.to_u64_digits();
    let payload = pos + l + 1;
    for (i, d) in digits.iter().enumerate() {
        let lo_bit = 64 * i;
        let width = (l - lo_bit).min(64);
        let at = payload + l - lo_bit - width;
        bits.set_bits(at, width, if width == 64 { *d } else { d & ((1 << width) - 1) });
    }
    pos + 2 * l + 1
}

/// The codeword of `x` as its own bit sequence.
pub fn encode(x: u64) -> BitSequence {
    let mut bits = BitSequence::zeros(encoded_length(x));
    write_codeword(&mut bits, 0, x);
    bits
}

pub fn encode_big(x: &BigUint) -> BitSequence {
    let mut bits = BitSequence::zeros(encoded_length_big(x));
    write_codeword_big(&mut bits, 0, x);
    bits
}

/// Parses the codeword starting at `pos`, bounded by the first `limit` bits.
#[inline]
pub fn codeword_at(bits: &BitSequence, pos: usize, limit: usize) -> crate::Result<Codeword> {
    use crate::Error;
    if pos >= limit {
        return Err(Error::Corrupt {
            pos,
            reason: "no codeword starts past the end of the sequence",
        });
    }
    let run = bits.ones_run(pos);
    let cw = Codeword {
        start: pos,
        payload_len: run,
    };
    if run > 0 && cw.end() > limit {
        return Err(Error::Corrupt {
            pos,
            reason: "codeword runs past the end of the sequence",
        });
    }
    Ok(cw)
}

/// Value of a codeword whose payload fits a machine word.
#[inline]
pub fn value_u64(bits: &BitSequence, cw: Codeword) -> crate::Result<u64> {
    if cw.payload_len > 64 {
        return Err(crate::Error::ValueTooWide {
            pos: cw.start,
            bits: cw.payload_len,
        });
    }
    Ok(bits.get_bits(cw.payload_start(), cw.payload_len))
}

/// Value of a codeword, saturated to `u64::MAX` when it does not fit.
#[inline]
pub fn value_saturating(bits: &BitSequence, cw: Codeword) -> u64 {
    if cw.payload_len > 64 {
        u64::MAX
    } else {
        bits.get_bits(cw.payload_start(), cw.payload_len)
    }
}

pub fn value_big(bits: &BitSequence, cw: Codeword) -> BigUint {
    let l = cw.payload_len;
    let p = cw.payload_start();
    let mut digits = Vec::with_capacity(l.div_ceil(64));
    let mut hi = l;
    while hi > 0 {
        let width = hi.min(64);
        digits.push(bits.get_bits(p + hi - width, width));
        hi -= width;
    }
    let mut out = BigUint::from(0u32);
    for d in digits.iter().rev() {
        out = (out << 64u32) | BigUint::from(*d);
    }
    out
}

/// Orders two codewords by the numbers they encode.
#[inline]
pub fn cmp_codewords(
    a_bits: &BitSequence,
    a: Codeword,
    b_bits: &BitSequence,
    b: Codeword,
) -> std::cmp::Ordering {
    a.payload_len.cmp(&b.payload_len).then_with(|| {
        a_bits.cmp_ranges(a.payload_start(), b_bits, b.payload_start(), a.payload_len)
    })
}
