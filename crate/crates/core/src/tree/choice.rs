/// A subset of `0..n` with constant-time add, remove, membership and
/// choice, and ordered iteration.
///
/// Members are bits of a bitmap; every higher level keeps one bit per
/// nonempty word of the level below. With 64-bit words, a universe of
/// `2^24` elements needs four levels and about `1.02 n` bits.
#[derive(Clone, Debug)]
pub struct ChoiceDictionary {
    universe: usize,
    len: usize,
    /// `levels[0]` is the bitmap itself.
    levels: Vec<Vec<u64>>,
}

impl ChoiceDictionary {
    pub fn new(universe: usize) -> Self {
        let mut levels = Vec::new();
        let mut size = universe.max(1);
        loop {
            let words = size.div_ceil(64);
            levels.push(vec![0u64; words]);
            if words == 1 {
                break;
            }
            size = words;
        }
        Self {
            universe,
            len: 0,
            levels,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
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
    pub fn contains(&self, i: usize) -> bool {
        self.levels[0][i / 64] >> (i % 64) & 1 == 1
    }

    /// Inserts `i`; returns whether it was absent.
    pub fn add(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "{i} outside universe {}", self.universe);
        if self.contains(i) {
            return false;
        }
        self.len += 1;
        let mut i = i;
        for level in &mut self.levels {
            let w = &mut level[i / 64];
            let was_empty = *w == 0;
            *w |= 1 << (i % 64);
            if !was_empty {
                break;
            }
            i /= 64;
        }
        true
    }

    /// Removes `i`; returns whether it was present.
    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.universe || !self.contains(i) {
            return false;
        }
        self.len -= 1;
        let mut i = i;
        for level in &mut self.levels {
            let w = &mut level[i / 64];
            *w &= !(1 << (i % 64));
            if *w != 0 {
                break;
            }
            i /= 64;
        }
        true
    }

    /// Some member, or `None` when empty. Returns the smallest member.
    pub fn choice(&self) -> Option<usize> {
        self.next_member(0)
    }

    /// Smallest member `>= from`.
    pub fn next_member(&self, from: usize) -> Option<usize> {
        if from >= self.universe {
            return None;
        }
        // Climb until a word has a set bit at or after the position.
        let mut i = from;
        let mut level = 0;
        let found = loop {
            let w = self.levels[level][i / 64] & (!0u64 << (i % 64));
            if w != 0 {
                break (i / 64) * 64 + w.trailing_zeros() as usize;
            }
            level += 1;
            if level == self.levels.len() {
                return None;
            }
            i = i / 64 + 1;
            if i / 64 >= self.levels[level].len() {
                return None;
            }
        };
        // Descend to the lowest member below the found summary bit.
        let mut i = found;
        while level > 0 {
            level -= 1;
            i = i * 64 + self.levels[level][i].trailing_zeros() as usize;
        }
        Some(i)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.next_member(0), move |&i| self.next_member(i + 1))
    }

    /// Removes every member in `O(len)` time.
    pub fn clear(&mut self) {
        while let Some(i) = self.choice() {
            self.remove(i);
        }
    }

    pub fn size_in_bits(&self) -> usize {
        self.levels.iter().map(|l| l.capacity() * 64).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    #[test]
    fn empty_and_single() {
        let mut c = ChoiceDictionary::new(10);
        assert_eq!(c.choice(), None);
        assert!(c.add(7));
        assert!(!c.add(7));
        assert_eq!(c.choice(), Some(7));
        assert!(c.remove(7));
        assert!(!c.remove(7));
        assert!(c.is_empty());
        let c = ChoiceDictionary::new(0);
        assert_eq!(c.choice(), None);
    }

    #[test]
    fn random_against_set() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in [1, 63, 64, 65, 4096, 300_000] {
            let mut c = ChoiceDictionary::new(n);
            let mut oracle = BTreeSet::new();
            for _ in 0..5000 {
                let i = rng.gen_range(0..n);
                if rng.gen_bool(0.6) {
                    assert_eq!(c.add(i), oracle.insert(i));
                } else {
                    assert_eq!(c.remove(i), oracle.remove(&i));
                }
                assert_eq!(c.len(), oracle.len());
                let from = rng.gen_range(0..n);
                assert_eq!(c.next_member(from), oracle.range(from..).next().copied());
            }
            assert!(c.iter().eq(oracle.iter().copied()));
            c.clear();
            assert!(c.is_empty());
            assert_eq!(c.choice(), None);
        }
    }
}
