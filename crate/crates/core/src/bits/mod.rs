//! Bit containers, rank-select, and the half-frame lookup tables.

mod int_vector;
mod rank_select;
mod sequence;
mod tables;

pub use int_vector::{bit_width, IntVector};
pub use rank_select::{RankSelectIndex, RankedBits};
pub use sequence::BitSequence;
pub use tables::{
    shared_popcount, shared_prefixsum, PopcountTable, PrefixSumTable, TABLE_CAP,
};

/// All-zero sequence of `n_bits` bits.
pub fn zero_fill(n_bits: usize) -> crate::Result<BitSequence> {
    BitSequence::try_zeros(n_bits)
}

pub fn build_rank_select(bits: BitSequence) -> RankedBits {
    RankedBits::new(bits)
}

pub fn build_popcount_table(tau: usize) -> crate::Result<PopcountTable> {
    PopcountTable::build(tau)
}

pub fn build_prefixsum_table(tau: usize) -> crate::Result<PrefixSumTable> {
    PrefixSumTable::build(tau)
}
