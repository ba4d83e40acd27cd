//! Space-efficient sorting and ranking of self-delimiting numbers, and an
//! `O(n)`-bit linear-time tree isomorphism test built on them.
//!
//! The crate is layered bottom-up:
//!
//! * [`bits`]: bit sequences, packed integer vectors, rank-select, and the
//!   popcount / prefix-sum tables over half-frames.
//! * [`codec`]: the self-delimiting code `1^l 0 bin(x)` and packed sequences
//!   of codewords, plus the `SDN1` container format.
//! * [`sort`]: stable `O(k + N/tau)` sorting of such sequences.
//! * [`rank`]: dense and competitive rank structures answering in `O(1)`.
//! * [`tree`]: balanced parentheses, choice dictionaries, height-order
//!   iteration, classification storage, and tree centers.
//! * [`iso`]: rooted, unrooted and colored tree isomorphism.

pub mod accounting;
pub mod bits;
pub mod codec;
mod error;
pub mod iso;
pub mod rank;
pub mod sort;
pub mod tree;
pub mod workload;

pub use error::{Error, Result};
