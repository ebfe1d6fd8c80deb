//! Subsets of `V` as bit vectors with bit-parallel sumset steps.
//!
//! Translating a set by a vector `delta` decomposes into one cyclic shift per
//! nonzero coordinate of `delta`: shifting coordinate `c` by `a` rotates, in
//! every aligned block of `p^(c+1)` bits, the `p` sub-blocks of `p^c` bits by
//! `a` positions. Each rotation is two bit-range copies, so a whole
//! translation costs `O(d * |V| / 64)` word operations.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::space::VectorSpace;

/// A subset of the points of `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSet {
    size: u64,
    bits: BitSet,
}

impl VectorSet {
    pub fn empty(space: &VectorSpace) -> Self {
        VectorSet {
            size: space.size(),
            bits: BitSet::new(space.size() as usize),
        }
    }

    /// The singleton `{0}`.
    pub fn zero_singleton(space: &VectorSpace) -> Self {
        let mut s = Self::empty(space);
        s.bits.set(0);
        s
    }

    pub fn from_indices(space: &VectorSpace, indices: &[u64]) -> Result<Self> {
        let mut s = Self::empty(space);
        for &i in indices {
            if i >= s.size {
                return Err(Error::invalid(format!("point index {i} out of range")));
            }
            s.bits.set(i as usize);
        }
        Ok(s)
    }

    #[inline]
    pub fn contains(&self, index: u64) -> bool {
        self.bits.get(index as usize)
    }

    #[inline]
    pub fn insert(&mut self, index: u64) {
        self.bits.set(index as usize);
    }

    pub fn len(&self) -> u64 {
        self.bits.count_ones() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.size
    }

    pub fn space_size(&self) -> u64 {
        self.size
    }

    pub fn indices(&self) -> Vec<u64> {
        self.bits.iter_ones().map(|i| i as u64).collect()
    }

    pub fn union_with(&mut self, other: &VectorSet) {
        self.bits.union_with(&other.bits);
    }

    pub fn is_subset_of(&self, other: &VectorSet) -> bool {
        self.bits.is_subset_of(&other.bits)
    }

    /// `self = new \ old`, the fresh layer of a growing iteration.
    pub fn assign_difference(&mut self, new: &VectorSet, old: &VectorSet) {
        self.bits.assign_difference(&new.bits, &old.bits);
    }
}

/// Reusable buffers for translations.
pub struct TranslateScratch {
    front: BitSet,
    back: BitSet,
}

impl TranslateScratch {
    pub fn new(space: &VectorSpace) -> Self {
        TranslateScratch {
            front: BitSet::new(space.size() as usize),
            back: BitSet::new(space.size() as usize),
        }
    }
}

/// Rotates coordinate `coord` of every point by `amount`, writing into a
/// zeroed output.
fn shift_coordinate(
    space: &VectorSpace,
    src: &BitSet,
    dst: &mut BitSet,
    coord: usize,
    amount: u64,
) {
    let p = space.p() as usize;
    let run = space.stride(coord) as usize; // bits per digit value
    let block = run * p;
    let nblocks = space.size() as usize / block;
    let a = amount as usize;
    for b in 0..nblocks {
        let base = b * block;
        dst.or_bit_range(src, base, base + a * run, (p - a) * run);
        dst.or_bit_range(src, base + (p - a) * run, base, a * run);
    }
}

/// ORs the translate `src + delta` into `dst`.
pub fn or_translated(
    space: &VectorSpace,
    dst: &mut VectorSet,
    src: &VectorSet,
    delta: u64,
    scratch: &mut TranslateScratch,
) {
    debug_assert_eq!(dst.size, src.size);
    if delta == 0 {
        dst.bits.union_with(&src.bits);
        return;
    }
    let p = space.p();
    let mut digits = vec![0u64; space.dim()];
    space.decode_into(delta, &mut digits);
    let TranslateScratch { front, back } = scratch;
    let mut pending = false; // whether `front` holds the partial shift
    for (coord, &digit) in digits.iter().enumerate() {
        let a = digit % p;
        if a == 0 {
            continue;
        }
        back.clear();
        let input = if pending { &*front } else { &src.bits };
        shift_coordinate(space, input, back, coord, a);
        std::mem::swap(front, back);
        pending = true;
    }
    if pending {
        dst.bits.union_with(front);
    } else {
        dst.bits.union_with(&src.bits);
    }
}

/// A connection set: the nonzero points of one orbit (or any nonzero
/// subset), sorted, with its closure under negation recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionSet {
    elements: Vec<u64>,
    symmetric: bool,
}

impl ConnectionSet {
    pub fn new(space: &VectorSpace, elements: &[u64]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::invalid("connection set must be nonempty"));
        }
        let mut sorted = elements.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted[0] == 0 {
            return Err(Error::invalid("connection set must not contain 0"));
        }
        if *sorted.last().unwrap() >= space.size() {
            return Err(Error::invalid("connection set point out of range"));
        }
        let symmetric = sorted
            .iter()
            .all(|&v| sorted.binary_search(&space.neg_point(v)).is_ok());
        Ok(ConnectionSet {
            elements: sorted,
            symmetric,
        })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// The symmetrization `Δ ∪ -Δ`.
    pub fn symmetrized(&self, space: &VectorSpace) -> ConnectionSet {
        if self.symmetric {
            return self.clone();
        }
        let mut all = self.elements.clone();
        all.extend(self.elements.iter().map(|&v| space.neg_point(v)));
        ConnectionSet::new(space, &all).expect("nonzero stays nonzero under negation")
    }
}

/// The exact sumset `S + Δ`, by translating `S` by every element of `Δ` and
/// OR-accumulating.
pub fn sumset_step(space: &VectorSpace, s: &VectorSet, delta: &ConnectionSet) -> VectorSet {
    let mut out = VectorSet::empty(space);
    let mut scratch = TranslateScratch::new(space);
    for &d in delta.elements() {
        or_translated(space, &mut out, s, d, &mut scratch);
    }
    out
}
