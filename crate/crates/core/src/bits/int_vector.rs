use super::BitSequence;

/// Fixed-width unsigned integers packed back to back in a [`BitSequence`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntVector {
    bits: BitSequence,
    width: usize,
    len: usize,
}

/// Number of bits needed to write `x` in binary (0 for 0).
#[inline]
pub fn bit_width(x: u64) -> usize {
    (u64::BITS - x.leading_zeros()) as usize
}

impl IntVector {
    pub fn new(len: usize, width: usize) -> Self {
        assert!(width <= 64, "width {width} exceeds a machine word");
        Self {
            bits: BitSequence::zeros(len * width),
            width,
            len,
        }
    }

    /// Vector wide enough to hold every value in `0..=max`.
    pub fn for_max(len: usize, max: u64) -> Self {
        Self::new(len, bit_width(max))
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
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, i: usize) -> u64 {
        debug_assert!(i < self.len);
        self.bits.get_bits(i * self.width, self.width)
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u64) {
        debug_assert!(i < self.len);
        self.bits.set_bits(i * self.width, self.width, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn size_in_bits(&self) -> usize {
        self.bits.size_in_bits()
    }
}
