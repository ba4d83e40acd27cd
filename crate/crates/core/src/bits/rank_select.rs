//! Two-level rank directory with sampled select.
//!
//! Superblocks cover 512 bits (eight words). Each superblock stores the
//! absolute count of ones before it and, packed into one word, the seven
//! 9-bit counts of ones before each of its words. Select keeps the
//! superblock of every 512th one and scans forward from there. The index
//! costs 0.25 bits per bit for rank plus at most 0.125 bits per bit for the
//! select samples.
//!
//! The index does not own its bit sequence; every query takes the sequence
//! it was built from.

use super::sequence::WORD;
use super::BitSequence;

const SB_WORDS: usize = 8;
const SB_BITS: usize = SB_WORDS * WORD;
const SAMPLE_RATE: usize = 512;

#[derive(Clone, Debug, Default)]
pub struct RankSelectIndex {
    len: usize,
    ones: usize,
    /// Pairs `(absolute ones before superblock, packed relative counts)`.
    blocks: Vec<u64>,
    /// `samples[j]` = superblock holding the `(j * SAMPLE_RATE)`-th one (0-based).
    samples: Vec<u32>,
}

/// Position (0-based from the MSB) of the `r`-th (0-based) one in `word`.
#[inline]
pub(crate) fn select_in_word(mut word: u64, mut r: u32) -> usize {
    let mut base = 0usize;
    loop {
        let byte = (word >> 56) as u32;
        let c = byte.count_ones();
        if r < c {
            let mut b = byte;
            let mut i = 0;
            loop {
                if b & 0x80 != 0 {
                    if r == 0 {
                        return base + i;
                    }
                    r -= 1;
                }
                b <<= 1;
                i += 1;
            }
        }
        r -= c;
        word <<= 8;
        base += 8;
    }
}

impl RankSelectIndex {
    /// Builds the index in `O(len / w)` time.
    pub fn new(bits: &BitSequence) -> Self {
        let words = bits.words();
        let n_sb = words.len().div_ceil(SB_WORDS).max(1);
        let mut blocks = Vec::with_capacity(2 * n_sb + 2);
        let mut samples = Vec::new();
        let mut total = 0usize;
        for sb in 0..n_sb {
            let mut rel = 0u64;
            let mut inner = 0u64;
            for j in 0..SB_WORDS {
                if j > 0 {
                    rel |= inner << (9 * (j - 1));
                }
                let w = words.get(sb * SB_WORDS + j).copied().unwrap_or(0);
                inner += w.count_ones() as u64;
            }
            while samples.len() * SAMPLE_RATE < total + inner as usize {
                samples.push(sb as u32);
            }
            blocks.push(total as u64);
            blocks.push(rel);
            total += inner as usize;
        }
        blocks.push(total as u64);
        blocks.push(0);
        Self {
            len: bits.len(),
            ones: total,
            blocks,
            samples,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Total number of ones.
    pub fn ones(&self) -> usize {
        self.ones
    }

    /// Ones in positions `[0, i)`. Equals the 1-indexed `rank(i)` over
    /// bits `1..=i`.
    #[inline]
    pub fn rank(&self, bits: &BitSequence, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let sb = i / SB_BITS;
        let w = (i / WORD) % SB_WORDS;
        let mut r = self.blocks[2 * sb] as usize;
        if w > 0 {
            r += ((self.blocks[2 * sb + 1] >> (9 * (w - 1))) & 0x1FF) as usize;
        }
        let off = i % WORD;
        if off > 0 {
            r += (bits.words()[i / WORD] >> (WORD - off)).count_ones() as usize;
        }
        r
    }

    /// Position of the `k`-th one, counting from 0, or `None` if there are
    /// at most `k` ones.
    #[inline]
    pub fn select(&self, bits: &BitSequence, k: usize) -> Option<usize> {
        if k >= self.ones {
            return None;
        }
        let mut sb = self.samples[k / SAMPLE_RATE] as usize;
        while self.blocks[2 * (sb + 1)] as usize <= k {
            sb += 1;
        }
        let mut rem = k - self.blocks[2 * sb] as usize;
        let rel = self.blocks[2 * sb + 1];
        let mut w = 0;
        while w + 1 < SB_WORDS && ((rel >> (9 * w)) & 0x1FF) as usize <= rem {
            w += 1;
        }
        if w > 0 {
            rem -= ((rel >> (9 * (w - 1))) & 0x1FF) as usize;
        }
        let wi = sb * SB_WORDS + w;
        Some(wi * WORD + select_in_word(bits.words()[wi], rem as u32))
    }

    /// 1-indexed rank: ones among bits `1..=j`.
    pub fn rank_1based(&self, bits: &BitSequence, j: usize) -> usize {
        self.rank(bits, j)
    }

    /// 1-indexed select: the position (counting bits from 1) of the `k`-th
    /// one, `k >= 1`.
    pub fn select_1based(&self, bits: &BitSequence, k: usize) -> Option<usize> {
        k.checked_sub(1)
            .and_then(|k0| self.select(bits, k0))
            .map(|p| p + 1)
    }

    pub fn size_in_bits(&self) -> usize {
        self.blocks.capacity() * 64 + self.samples.capacity() * 32
    }
}

/// A bit sequence bundled with its rank-select index.
#[derive(Clone, Debug, Default)]
pub struct RankedBits {
    bits: BitSequence,
    index: RankSelectIndex,
}

impl RankedBits {
    pub fn new(bits: BitSequence) -> Self {
        let index = RankSelectIndex::new(&bits);
        Self { bits, index }
    }

    #[inline]
    pub fn bits(&self) -> &BitSequence {
        &self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    #[inline]
    pub fn rank(&self, i: usize) -> usize {
        self.index.rank(&self.bits, i)
    }

    #[inline]
    pub fn select(&self, k: usize) -> Option<usize> {
        self.index.select(&self.bits, k)
    }

    pub fn ones(&self) -> usize {
        self.index.ones()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn size_in_bits(&self) -> usize {
        self.bits.size_in_bits() + self.index.size_in_bits()
    }
}
