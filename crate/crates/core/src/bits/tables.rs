//! Lookup tables over half-frames.
//!
//! A table built for `tau` covers every `ceil(tau / 2)`-bit value. A table
//! built for a larger `tau` answers queries for narrower frames too: popcount
//! ignores leading zeros, and a narrow frame shifted left into a wider index
//! only gains trailing zero bits, each of which decodes as the codeword for 0.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest half-frame width any table is built for.
pub const TABLE_CAP: usize = 16;

fn half_frame_bits(tau: usize) -> Result<usize> {
    if tau < 2 {
        return Err(Error::Config(format!("tau must be at least 2, got {tau}")));
    }
    let h = tau.div_ceil(2);
    if h > TABLE_CAP {
        return Err(Error::Config(format!(
            "half-frame of {h} bits exceeds the table cap of {TABLE_CAP}"
        )));
    }
    Ok(h)
}

#[derive(Clone, Debug)]
pub struct PopcountTable {
    half_frame_bits: usize,
    entries: Vec<u8>,
}

impl PopcountTable {
    /// Builds the table for `ceil(tau / 2)`-bit frames by counting bit by bit.
    pub fn build(tau: usize) -> Result<Self> {
        let h = half_frame_bits(tau)?;
        let entries = (0..1u32 << h)
            .map(|z| {
                let mut count = 0u8;
                let mut v = z;
                while v != 0 {
                    count += (v & 1) as u8;
                    v >>= 1;
                }
                count
            })
            .collect();
        Ok(Self {
            half_frame_bits: h,
            entries,
        })
    }

    pub fn half_frame_bits(&self) -> usize {
        self.half_frame_bits
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Ones in `z`, which must be narrower than the table's half-frame.
    #[inline]
    pub fn lookup(&self, z: u64) -> u32 {
        self.entries[z as usize] as u32
    }
}

#[derive(Clone, Debug)]
pub struct PrefixSumTable {
    half_frame_bits: usize,
    entries: Vec<u16>,
}

/// Sum of the self-delimiting numbers read left to right from the
/// `width`-bit value `e`, stopping at an incomplete trailing codeword.
pub(crate) fn decode_sum(e: u64, width: usize) -> u64 {
    let bit = |i: usize| (e >> (width - 1 - i)) & 1 == 1;
    let mut pos = 0;
    let mut sum = 0u64;
    while pos < width {
        let mut ones = 0;
        while pos + ones < width && bit(pos + ones) {
            ones += 1;
        }
        if ones == 0 {
            pos += 1;
            continue;
        }
        if pos + 2 * ones + 1 > width {
            break;
        }
        let mut value = 0u64;
        for i in 0..ones {
            value = (value << 1) | bit(pos + ones + 1 + i) as u64;
        }
        sum += value;
        pos += 2 * ones + 1;
    }
    sum
}

impl PrefixSumTable {
    pub fn build(tau: usize) -> Result<Self> {
        let h = half_frame_bits(tau)?;
        let entries = (0..1u64 << h)
            .map(|e| decode_sum(e, h) as u16)
            .collect();
        Ok(Self {
            half_frame_bits: h,
            entries,
        })
    }

    pub fn half_frame_bits(&self) -> usize {
        self.half_frame_bits
    }

    pub fn entries(&self) -> &[u16] {
        &self.entries
    }

    /// Sum of the complete codewords in the `width`-bit frame `z`.
    #[inline]
    pub fn lookup(&self, z: u64, width: usize) -> u64 {
        debug_assert!(width <= self.half_frame_bits);
        self.entries[(z << (self.half_frame_bits - width)) as usize] as u64
    }
}

/// Tables at the cap, built once per process and shared by every structure.
pub fn shared_popcount() -> &'static PopcountTable {
    static T: OnceLock<PopcountTable> = OnceLock::new();
    T.get_or_init(|| PopcountTable::build(2 * TABLE_CAP).expect("cap is valid"))
}

pub fn shared_prefixsum() -> &'static PrefixSumTable {
    static T: OnceLock<PrefixSumTable> = OnceLock::new();
    T.get_or_init(|| PrefixSumTable::build(2 * TABLE_CAP).expect("cap is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn popcount_entries() {
        let t = PopcountTable::build(8).unwrap();
        assert_eq!(t.entries().len(), 16);
        let t = PopcountTable::build(16).unwrap();
        assert_eq!(t.lookup(0), 0);
        assert_eq!(t.lookup(0b1011), 3);
        for z in 0..256u64 {
            let mut oracle = 0;
            for b in 0..8 {
                oracle += (z >> b) & 1;
            }
            assert_eq!(t.lookup(z) as u64, oracle);
        }
    }

    #[test]
    fn tau_limits() {
        assert!(PopcountTable::build(1).is_err());
        assert!(PopcountTable::build(33).is_err());
        assert_eq!(PopcountTable::build(3).unwrap().half_frame_bits(), 2);
        assert!(PrefixSumTable::build(32).is_ok());
    }

    #[test]
    fn prefixsum_examples() {
        let t = PrefixSumTable::build(12).unwrap();
        // "101 101": two codewords of value 1.
        assert_eq!(t.lookup(0b101_101, 6), 2);
        assert_eq!(t.lookup(0, 6), 0);
        // "11010 1" -> 2, trailing fragment ignored.
        assert_eq!(t.lookup(0b11010_1, 6), 2);
    }

    // Independent decoder over a string of bits.
    fn string_oracle(bits: &str) -> u64 {
        let b: Vec<u8> = bits.bytes().map(|c| c - b'0').collect();
        let mut i = 0;
        let mut s = 0;
        while i < b.len() {
            if b[i] == 0 {
                i += 1;
                continue;
            }
            let l = b[i..].iter().take_while(|&&x| x == 1).count();
            if i + 2 * l + 1 > b.len() {
                break;
            }
            s += b[i + l + 1..i + 2 * l + 1]
                .iter()
                .fold(0u64, |acc, &x| acc * 2 + x as u64);
            i += 2 * l + 1;
        }
        s
    }

    #[test]
    fn prefixsum_exhaustive_8_bits() {
        let t = PrefixSumTable::build(16).unwrap();
        for e in 0..256u64 {
            assert_eq!(t.lookup(e, 8), string_oracle(&format!("{e:08b}")), "e={e:08b}");
        }
    }

    #[test]
    fn shared_tables_sampled() {
        let pc = shared_popcount();
        let ps = shared_prefixsum();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10_000 {
            let z: u64 = rng.gen_range(0..1 << 16);
            assert_eq!(pc.lookup(z), z.count_ones());
            assert_eq!(ps.lookup(z, 16), string_oracle(&format!("{z:016b}")));
        }
    }
}
