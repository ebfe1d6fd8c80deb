//! A packed bit set over point indices, plus the bit-range copy primitive
//! used by the per-coordinate cyclic shifts of the sumset engine.

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(WORD_BITS)],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count_ones() == self.len
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// `self = other_new & !other_old`; used to extract BFS layers.
    pub fn assign_difference(&mut self, new: &BitSet, old: &BitSet) {
        for ((d, n), o) in self.words.iter_mut().zip(&new.words).zip(&old.words) {
            *d = n & !o;
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + bit)
                }
            })
        })
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// ORs `len` bits read from `src` starting at bit `src_start` into `self`
    /// starting at bit `dst_start`. Bits beyond `self.len` must not be touched
    /// by the caller's arithmetic; ranges are assumed in bounds.
    pub fn or_bit_range(&mut self, src: &BitSet, src_start: usize, dst_start: usize, len: usize) {
        debug_assert!(src_start + len <= src.len);
        debug_assert!(dst_start + len <= self.len);
        let mut remaining = len;
        let mut s = src_start;
        let mut d = dst_start;
        while remaining > 0 {
            let dw = d / WORD_BITS;
            let db = d % WORD_BITS;
            let take = (WORD_BITS - db).min(remaining);
            let bits = read_bits(&src.words, s, take);
            self.words[dw] |= bits << db;
            s += take;
            d += take;
            remaining -= take;
        }
    }
}

/// Reads `count <= 64` bits from `words` starting at bit `start`, right
/// aligned, zero padded above.
#[inline]
fn read_bits(words: &[u64], start: usize, count: usize) -> u64 {
    let sw = start / WORD_BITS;
    let sb = start % WORD_BITS;
    let lo = words[sw] >> sb;
    let val = if sb == 0 || sw + 1 >= words.len() {
        lo
    } else {
        lo | (words[sw + 1] << (WORD_BITS - sb))
    };
    if count == WORD_BITS {
        val
    } else {
        val & ((1u64 << count) - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_count() {
        let mut b = BitSet::new(130);
        assert!(b.is_empty());
        for i in [0usize, 1, 63, 64, 65, 127, 128, 129] {
            b.set(i);
            assert!(b.get(i));
        }
        assert_eq!(b.count_ones(), 8);
        assert!(!b.get(2));
    }

    #[test]
    fn iter_ones_matches_sets() {
        let mut b = BitSet::new(200);
        let idxs = [0usize, 3, 63, 64, 100, 128, 199];
        for &i in &idxs {
            b.set(i);
        }
        let collected: Vec<usize> = b.iter_ones().collect();
        assert_eq!(collected, idxs);
    }

    #[test]
    fn or_bit_range_unaligned() {
        // compare against a per-bit reference on a few awkward offsets
        let mut src = BitSet::new(300);
        for i in (0..300).step_by(7) {
            src.set(i);
        }
        for (ss, ds, len) in [(0, 5, 100), (13, 64, 130), (63, 1, 200), (70, 0, 64), (1, 299, 1)] {
            let mut fast = BitSet::new(300);
            fast.or_bit_range(&src, ss, ds, len);
            let mut slow = BitSet::new(300);
            for k in 0..len {
                if src.get(ss + k) {
                    slow.set(ds + k);
                }
            }
            assert_eq!(fast, slow, "ss={ss} ds={ds} len={len}");
        }
    }

    #[test]
    fn subset_and_difference() {
        let mut a = BitSet::new(70);
        let mut b = BitSet::new(70);
        a.set(3);
        b.set(3);
        b.set(69);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        let mut diff = BitSet::new(70);
        diff.assign_difference(&b, &a);
        assert_eq!(diff.iter_ones().collect::<Vec<_>>(), vec![69]);
    }
}
