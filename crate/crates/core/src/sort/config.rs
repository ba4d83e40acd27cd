use crate::bits::{bit_width, BitSequence, TABLE_CAP};
use crate::codec::Codeword;
use crate::error::{Error, Result};

/// Parameters of one sort call.
///
/// `tau` bounds the width of a table operand; radix digits are
/// `ceil(tau / 2)` bits. Numbers at most `q = 2^q_log` are small and go
/// through the area presort; larger ones are sorted digit-wise on their own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SortConfig {
    tau: usize,
    q_log: usize,
}

pub const MAX_TAU: usize = 2 * TABLE_CAP;

impl SortConfig {
    /// Picks `tau = ceil(log2(N + 1))` (at least 2) for an `N`-bit input.
    pub fn for_bits(n_bits: usize) -> Result<Self> {
        let tau = bit_width(n_bits as u64).max(2);
        Self::new(n_bits, tau)
    }

    /// Explicit `tau` with `log N <= tau <= 32`.
    pub fn new(n_bits: usize, tau: usize) -> Result<Self> {
        if !(2..=MAX_TAU).contains(&tau) {
            return Err(Error::Config(format!(
                "tau must lie in [2, {MAX_TAU}], got {tau}"
            )));
        }
        if (n_bits as u128) > (1u128 << tau) {
            return Err(Error::Config(format!(
                "tau = {tau} is below log2 N for N = {n_bits}"
            )));
        }
        Ok(Self {
            tau,
            q_log: (n_bits / tau).max(1),
        })
    }

    /// Overrides the small/big boundary to `q = 2^q_log`.
    pub fn with_threshold_log(mut self, q_log: usize) -> Result<Self> {
        if q_log == 0 {
            return Err(Error::Config("the threshold q must be at least 2".into()));
        }
        self.q_log = q_log;
        Ok(self)
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    /// Radix digit width `ceil(tau / 2)`.
    pub fn digit_bits(&self) -> usize {
        self.tau.div_ceil(2)
    }

    /// `log2 q`.
    pub fn q_log(&self) -> usize {
        self.q_log
    }

    /// Whether `x <= q`.
    pub fn is_small_value(&self, x: u64) -> bool {
        let l = bit_width(x);
        l <= self.q_log || (l == self.q_log + 1 && x.is_power_of_two())
    }

    /// Whether the number in codeword `cw` is at most `q`.
    pub fn is_small(&self, bits: &BitSequence, cw: Codeword) -> bool {
        let l = cw.payload_len;
        if l <= self.q_log {
            return true;
        }
        // Only q itself, 1 followed by q_log zeros, is small among the
        // (q_log + 1)-bit numbers.
        l == self.q_log + 1 && range_is_zero(bits, cw.payload_start() + 1, l - 1)
    }
}

pub(crate) fn range_is_zero(bits: &BitSequence, mut pos: usize, mut len: usize) -> bool {
    while len > 0 {
        let w = len.min(64);
        if bits.get_bits(pos, w) != 0 {
            return false;
        }
        pos += w;
        len -= w;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{codeword_at, encode};

    #[test]
    fn parameters() {
        let c = SortConfig::for_bits(1000).unwrap();
        assert_eq!(c.tau(), 10);
        assert_eq!(c.digit_bits(), 5);
        assert_eq!(c.q_log(), 100);
        assert_eq!(SortConfig::for_bits(0).unwrap().tau(), 2);
        assert_eq!(SortConfig::for_bits(0).unwrap().q_log(), 1);
        assert!(SortConfig::new(1 << 20, 8).is_err());
        assert!(SortConfig::new(10, 33).is_err());
        assert!(SortConfig::for_bits(10).unwrap().with_threshold_log(0).is_err());
    }

    #[test]
    fn boundary_is_inclusive() {
        let c = SortConfig::for_bits(10).unwrap().with_threshold_log(3).unwrap();
        for x in 0..40u64 {
            let bits = encode(x);
            let cw = codeword_at(&bits, 0, bits.len()).unwrap();
            assert_eq!(c.is_small(&bits, cw), x <= 8, "x={x}");
            assert_eq!(c.is_small_value(x), x <= 8, "x={x}");
        }
    }
}
