//! Stable sorting of self-delimiting numbers in `O(k + N/tau)` time and
//! `O(N)` bits.
//!
//! Numbers at most `q` are presorted into *areas*, one per codeword length,
//! and each area is radix sorted on `ceil(tau/2)`-bit digits. Numbers above
//! `q` are few; they are bucketed by length and radix sorted by reading
//! their digits where they lie. The output holds the small numbers followed
//! by the big ones and has exactly the input's length.

mod config;

pub use config::{SortConfig, MAX_TAU};

use std::cmp::Ordering;

use crate::bits::{bit_width, BitSequence, IntVector};
use crate::codec::{codeword_len, Codeword, SdnSequence};
use crate::error::{Error, Result};

/// Reusable sorting state. The counting-sort histogram survives between
/// calls so that repeated small sorts do not reallocate it.
#[derive(Debug, Default)]
pub struct Sorter {
    hist: Vec<u32>,
}

/// Below this many items a digit pass would be dominated by clearing the
/// histogram, so the area is sorted by comparing digit strings instead.
const SMALL_AREA: usize = 16;

impl Sorter {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sorts `s` into a new sequence of the same length.
    pub fn sort(&mut self, s: &SdnSequence, cfg: &SortConfig) -> Result<SdnSequence> {
        let mut out = SdnSequence::try_with_capacity(s.len_bits())?;
        self.run(s, cfg, &mut out, None);
        Ok(out)
    }

    /// Sorts `s` into `out`, reusing `out`'s storage.
    pub fn sort_into(&mut self, s: &SdnSequence, cfg: &SortConfig, out: &mut SdnSequence) {
        out.reset(s.len_bits());
        self.run(s, cfg, out, None);
    }

    fn run(
        &mut self,
        s: &SdnSequence,
        cfg: &SortConfig,
        out: &mut SdnSequence,
        mut track: Option<&mut Vec<usize>>,
    ) {
        let end = self.sort_small_part(s, cfg, out.bits_mut(), track.as_deref_mut());
        let end = self.sort_big_part(s, cfg, out.bits_mut(), end, track);
        debug_assert_eq!(end, s.cursor());
        out.set_written(s.count(), s.cursor());
    }

    /// Area presort of the numbers `<= q`, written from bit 0 of `dst`.
    /// Returns the end of the written range.
    fn sort_small_part(
        &mut self,
        src: &SdnSequence,
        cfg: &SortConfig,
        dst: &mut BitSequence,
        mut track: Option<&mut Vec<usize>>,
    ) -> usize {
        let bits = src.bits();
        let (mut k, mut n, mut max_len) = (0usize, 0usize, 0usize);
        for cw in src.codewords().filter(|&cw| cfg.is_small(bits, cw)) {
            k += 1;
            n += cw.len();
            max_len = max_len.max(cw.payload_len);
        }
        if k == 0 {
            return 0;
        }

        // C: numbers per payload length.
        let mut counts = IntVector::for_max(max_len + 1, k as u64);
        for cw in src.codewords().filter(|&cw| cfg.is_small(bits, cw)) {
            let l = cw.payload_len;
            counts.set(l, counts.get(l) + 1);
        }
        // B: next free bit of each area.
        let mut offsets = IntVector::for_max(max_len + 1, n as u64);
        let mut acc = 0u64;
        for l in 0..=max_len {
            offsets.set(l, acc);
            acc += counts.get(l) * codeword_len(l) as u64;
        }

        let base = track.as_ref().map_or(0, |t| t.len());
        let mut next_slot = Vec::new();
        if let Some(t) = track.as_deref_mut() {
            t.resize(base + k, 0);
            let mut s = 0;
            for l in 0..=max_len {
                next_slot.push(s);
                s += counts.get(l) as usize;
            }
        }

        for (i, cw) in src.codewords().enumerate() {
            if !cfg.is_small(bits, cw) {
                continue;
            }
            let l = cw.payload_len;
            let at = offsets.get(l) as usize;
            dst.copy_from(at, bits, cw.start, cw.len());
            offsets.set(l, (at + cw.len()) as u64);
            if let Some(t) = track.as_deref_mut() {
                t[base + next_slot[l]] = i;
                next_slot[l] += 1;
            }
        }

        let d = cfg.digit_bits();
        let mut first_slot = 0;
        for l in 0..=max_len {
            let c = counts.get(l) as usize;
            let end = offsets.get(l) as usize;
            let start = end - c * codeword_len(l);
            // Areas of the values 0 and 1 hold equal numbers only.
            if c >= 2 && l >= 2 {
                let tags = track
                    .as_deref_mut()
                    .map(|t| &mut t[base + first_slot..base + first_slot + c]);
                if l <= 64 {
                    self.sort_narrow_area(dst, start, c, l, d, tags);
                } else {
                    self.sort_wide_area(dst, start, c, l, d, tags);
                }
            }
            first_slot += c;
        }
        n
    }

    /// Area of `c` numbers with `l <= 64` payload bits: the payloads are
    /// lifted into an `l`-bit packed vector and radix sorted there.
    fn sort_narrow_area(
        &mut self,
        dst: &mut BitSequence,
        start: usize,
        c: usize,
        l: usize,
        d: usize,
        tags: Option<&mut [usize]>,
    ) {
        let len = codeword_len(l);
        let mut vals = IntVector::new(c, l);
        for j in 0..c {
            vals.set(j, dst.get_bits(start + j * len + l + 1, l));
        }
        // The leading payload bit is 1 for every number in the area.
        let passes = (l - 1).div_ceil(d);
        let mask = (1u64 << d) - 1;
        self.radix(&mut vals, passes, d, |v, t| ((v >> (t * d)) & mask) as usize, tags);
        for j in 0..c {
            dst.set_bits(start + j * len + l + 1, l, vals.get(j));
        }
    }

    /// Area of numbers wider than a word: sort their offsets by digits read
    /// in place from a copy of the area, then write them back in order.
    fn sort_wide_area(
        &mut self,
        dst: &mut BitSequence,
        start: usize,
        c: usize,
        l: usize,
        d: usize,
        tags: Option<&mut [usize]>,
    ) {
        let len = codeword_len(l);
        let mut area = BitSequence::zeros(c * len);
        area.copy_from(0, dst, start, c * len);
        let mut pos = IntVector::for_max(c, ((c - 1) * len) as u64);
        for j in 0..c {
            pos.set(j, (j * len) as u64);
        }
        self.sort_positions(&area, &mut pos, l, d, tags);
        for j in 0..c {
            dst.copy_from(start + j * len, &area, pos.get(j) as usize, len);
        }
    }

    /// Sorts positions of codewords with `l`-bit payloads in `bits` by value.
    fn sort_positions(
        &mut self,
        bits: &BitSequence,
        pos: &mut IntVector,
        l: usize,
        d: usize,
        tags: Option<&mut [usize]>,
    ) {
        let passes = (l - 1).div_ceil(d);
        let digit = |p: u64, t: usize| {
            let hi = l - t * d;
            let lo = hi.saturating_sub(d).max(1);
            bits.get_bits(p as usize + l + 1 + lo, hi - lo) as usize
        };
        self.radix(pos, passes, d, digit, tags);
    }

    /// Numbers above `q`, written from `dst_pos`. Returns the end position.
    fn sort_big_part(
        &mut self,
        src: &SdnSequence,
        cfg: &SortConfig,
        dst: &mut BitSequence,
        dst_pos: usize,
        track: Option<&mut Vec<usize>>,
    ) -> usize {
        let bits = src.bits();
        let pos = self.sorted_positions(src, cfg.digit_bits(), |cw| !cfg.is_small(bits, cw), track);
        let mut out = dst_pos;
        for p in pos.iter() {
            let len = codeword_len(bits.ones_run(p as usize));
            dst.copy_from(out, bits, p as usize, len);
            out += len;
        }
        out
    }

    /// Positions of the codewords accepted by `select`, ordered stably by
    /// value. Pairs (length, position) are bucketed by length, then each
    /// bucket is radix sorted on digits read in place.
    pub(crate) fn sorted_positions(
        &mut self,
        src: &SdnSequence,
        d: usize,
        select: impl Fn(Codeword) -> bool,
        mut track: Option<&mut Vec<usize>>,
    ) -> IntVector {
        let bits = src.bits();
        let (mut k, mut max_len) = (0usize, 0usize);
        for cw in src.codewords().filter(|&cw| select(cw)) {
            k += 1;
            max_len = max_len.max(cw.payload_len);
        }
        let pw = bit_width(src.cursor() as u64);
        if k == 0 {
            return IntVector::new(0, pw);
        }

        let lw = bit_width(max_len as u64);
        let pmask = (1u64 << pw) - 1;
        let mut items = IntVector::new(k, pw + lw);
        let base = track.as_ref().map_or(0, |t| t.len());
        let mut j = 0;
        for (i, cw) in src.codewords().enumerate() {
            if !select(cw) {
                continue;
            }
            items.set(j, ((cw.payload_len as u64) << pw) | cw.start as u64);
            if let Some(t) = track.as_deref_mut() {
                t.push(i);
            }
            j += 1;
        }

        let mask = (1u64 << d) - 1;
        let tags = track.as_deref_mut().map(|t| &mut t[base..]);
        self.radix(
            &mut items,
            lw.div_ceil(d),
            d,
            |it, t| ((it >> (pw + t * d)) & mask) as usize,
            tags,
        );

        let mut out = IntVector::new(k, pw);
        let mut j = 0;
        while j < k {
            let l = (items.get(j) >> pw) as usize;
            let mut e = j + 1;
            while e < k && (items.get(e) >> pw) as usize == l {
                e += 1;
            }
            let mut pos = IntVector::new(e - j, pw);
            for i in j..e {
                pos.set(i - j, items.get(i) & pmask);
            }
            if l >= 2 {
                let tags = track.as_deref_mut().map(|t| &mut t[base + j..base + e]);
                self.sort_positions(bits, &mut pos, l, d, tags);
            }
            for i in j..e {
                out.set(i, pos.get(i - j));
            }
            j = e;
        }
        out
    }

    /// Stable LSD radix sort of `items` on `passes` digits of `d` bits,
    /// digit `t` (least significant first) given by `key(item, t)`.
    /// `tags`, if present, is permuted alongside.
    fn radix<K>(
        &mut self,
        items: &mut IntVector,
        passes: usize,
        d: usize,
        key: K,
        tags: Option<&mut [usize]>,
    ) where
        K: Fn(u64, usize) -> usize,
    {
        let c = items.len();
        if passes == 0 || c < 2 {
            return;
        }
        if c <= SMALL_AREA || c * 8 < (1 << d) {
            let mut v: Vec<(u64, usize)> = (0..c).map(|j| (items.get(j), j)).collect();
            v.sort_by(|a, b| {
                (0..passes)
                    .rev()
                    .map(|t| key(a.0, t).cmp(&key(b.0, t)))
                    .find(|o| *o != Ordering::Equal)
                    .unwrap_or(Ordering::Equal)
            });
            for (j, &(it, _)) in v.iter().enumerate() {
                items.set(j, it);
            }
            if let Some(tags) = tags {
                let old = tags.to_vec();
                for (j, &(_, from)) in v.iter().enumerate() {
                    tags[j] = old[from];
                }
            }
            return;
        }

        let buckets = 1usize << d;
        if self.hist.len() < buckets {
            self.hist.resize(buckets, 0);
        }
        let mut tmp = IntVector::new(c, items.width());
        let mut tags = tags;
        let mut tag_tmp = tags.as_ref().map(|_| vec![0usize; c]);
        for t in 0..passes {
            let hist = &mut self.hist[..buckets];
            hist.fill(0);
            for j in 0..c {
                hist[key(items.get(j), t)] += 1;
            }
            let mut sum = 0;
            for h in hist.iter_mut() {
                let here = *h;
                *h = sum;
                sum += here;
            }
            for j in 0..c {
                let it = items.get(j);
                let b = key(it, t);
                let at = hist[b] as usize;
                hist[b] += 1;
                tmp.set(at, it);
                if let (Some(tt), Some(src)) = (tag_tmp.as_mut(), tags.as_deref()) {
                    tt[at] = src[j];
                }
            }
            std::mem::swap(items, &mut tmp);
            if let (Some(tt), Some(dst)) = (tag_tmp.as_ref(), tags.as_deref_mut()) {
                dst.copy_from_slice(tt);
            }
        }
    }

    /// Bytes held between calls.
    pub fn retained_bytes(&self) -> usize {
        self.hist.capacity() * 4
    }
}

fn check_all(s: &SdnSequence, cfg: &SortConfig, small: bool) -> Result<()> {
    for cw in s.codewords() {
        if cfg.is_small(s.bits(), cw) != small {
            return Err(Error::Precondition(format!(
                "number at bit {} is {} q = 2^{}",
                cw.start,
                if small { "above" } else { "at most" },
                cfg.q_log()
            )));
        }
    }
    Ok(())
}

/// Stable sort of a sequence whose numbers are all at most `q`.
pub fn presort_small(s: &SdnSequence, cfg: &SortConfig) -> Result<SdnSequence> {
    check_all(s, cfg, true)?;
    let mut out = SdnSequence::try_with_capacity(s.len_bits())?;
    Sorter::new().sort_small_part(s, cfg, out.bits_mut(), None);
    out.set_written(s.count(), s.cursor());
    Ok(out)
}

/// Stable sort of a sequence whose numbers all exceed `q`.
pub fn sort_big(s: &SdnSequence, cfg: &SortConfig) -> Result<SdnSequence> {
    check_all(s, cfg, false)?;
    let mut out = SdnSequence::try_with_capacity(s.len_bits())?;
    Sorter::new().sort_big_part(s, cfg, out.bits_mut(), 0, None);
    out.set_written(s.count(), s.cursor());
    Ok(out)
}

/// Stable sort of any sequence.
pub fn sort(s: &SdnSequence, cfg: &SortConfig) -> Result<SdnSequence> {
    Sorter::new().sort(s, cfg)
}

/// Like [`sort`], and also returns for every output number the index it had
/// in `s`.
pub fn sort_tracked(s: &SdnSequence, cfg: &SortConfig) -> Result<(SdnSequence, Vec<usize>)> {
    let mut out = SdnSequence::try_with_capacity(s.len_bits())?;
    let mut origin = Vec::with_capacity(s.count());
    Sorter::new().run(s, cfg, &mut out, Some(&mut origin));
    Ok((out, origin))
}

/// Sorts with the configuration chosen for the sequence's length.
pub fn sort_auto(s: &SdnSequence) -> Result<SdnSequence> {
    sort(s, &SortConfig::for_bits(s.len_bits())?)
}
