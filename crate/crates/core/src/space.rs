//! The vector space `V = F_p^d` with its canonical point encoding.
//!
//! A vector with coordinates `(c_0, ..., c_{d-1})` is encoded as the index
//! `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`, least-significant coordinate first.
//! Index 0 is the zero vector. The encoding is the bit position used by every
//! point set in the library, so reports are reproducible byte for byte.

use crate::error::{Error, Result};
use crate::field::PrimeField;

/// Default cap on `|V| = p^d`.
pub const DEFAULT_MAX_POINTS: u64 = 5_000_000;

/// `F_p^d` together with precomputed coordinate strides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorSpace {
    field: PrimeField,
    dim: usize,
    /// strides[i] = p^i
    strides: Vec<u64>,
    size: u64,
}

impl VectorSpace {
    pub fn new(field: PrimeField, dim: usize) -> Result<Self> {
        Self::with_cap(field, dim, DEFAULT_MAX_POINTS)
    }

    pub fn with_cap(field: PrimeField, dim: usize, max_points: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let p = field.modulus();
        let mut strides = Vec::with_capacity(dim);
        let mut acc: u64 = 1;
        for _ in 0..dim {
            strides.push(acc);
            acc = acc
                .checked_mul(p)
                .filter(|&v| v <= max_points)
                .ok_or(Error::CapExceeded {
                    what: "point-space size p^d",
                    cap: max_points,
                    reached: 0,
                })?;
        }
        let size = acc;
        Ok(VectorSpace {
            field,
            dim,
            strides,
            size,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of points `p^d`.
    #[inline]
    pub fn size(&self) -> u64 {
        self.size
    }

    #[inline]
    pub fn stride(&self, coord: usize) -> u64 {
        self.strides[coord]
    }

    /// Encodes a coordinate tuple as a point index.
    pub fn encode(&self, coords: &[u64]) -> Result<u64> {
        if coords.len() != self.dim {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                self.dim,
                coords.len()
            )));
        }
        let p = self.p();
        let mut idx = 0;
        for (i, &c) in coords.iter().enumerate() {
            if c >= p {
                return Err(Error::invalid(format!("coordinate {c} out of range [0,{p})")));
            }
            idx += c * self.strides[i];
        }
        Ok(idx)
    }

    /// Decodes a point index into coordinates.
    pub fn decode(&self, mut index: u64) -> Vec<u64> {
        debug_assert!(index < self.size);
        let p = self.p();
        let mut coords = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            coords.push(index % p);
            index /= p;
        }
        coords
    }

    /// Decodes into a caller-provided buffer (hot path in the engines).
    #[inline]
    pub fn decode_into(&self, mut index: u64, out: &mut [u64]) {
        let p = self.p();
        for slot in out.iter_mut() {
            *slot = index % p;
            index /= p;
        }
    }

    /// Pointwise sum of two points, by index.
    #[inline]
    pub fn add_points(&self, a: u64, b: u64) -> u64 {
        let p = self.p();
        let mut out = 0;
        let mut ra = a;
        let mut rb = b;
        for &stride in &self.strides {
            let ca = ra % p;
            let cb = rb % p;
            let mut c = ca + cb;
            if c >= p {
                c -= p;
            }
            out += c * stride;
            ra /= p;
            rb /= p;
        }
        out
    }

    /// Pointwise negation of a point, by index.
    #[inline]
    pub fn neg_point(&self, a: u64) -> u64 {
        let p = self.p();
        let mut out = 0;
        let mut r = a;
        for &stride in &self.strides {
            let c = r % p;
            if c != 0 {
                out += (p - c) * stride;
            }
            r /= p;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: u64, d: usize) -> VectorSpace {
        VectorSpace::new(PrimeField::new(p).unwrap(), d).unwrap()
    }

    #[test]
    fn encode_examples() {
        let v = space(5, 2);
        assert_eq!(v.encode(&[0, 0]).unwrap(), 0);
        assert_eq!(v.encode(&[2, 1]).unwrap(), 7);
        assert_eq!(v.encode(&[4, 4]).unwrap(), 24);
        assert!(v.encode(&[5, 0]).is_err());
        assert!(v.encode(&[0]).is_err());
    }

    #[test]
    fn roundtrip_all_points() {
        for (p, d) in [(2, 5), (3, 3), (5, 2), (7, 1)] {
            let v = space(p, d);
            for idx in 0..v.size() {
                let coords = v.decode(idx);
                assert_eq!(v.encode(&coords).unwrap(), idx);
            }
        }
    }

    #[test]
    fn zero_is_index_zero() {
        let v = space(7, 3);
        assert!(v.decode(0).iter().all(|&c| c == 0));
    }

    #[test]
    fn add_neg_consistency() {
        let v = space(5, 3);
        for a in 0..v.size() {
            assert_eq!(v.add_points(a, v.neg_point(a)), 0);
            assert_eq!(v.add_points(a, 0), a);
        }
        // spot check against coordinate arithmetic
        let a = v.encode(&[4, 2, 3]).unwrap();
        let b = v.encode(&[3, 4, 0]).unwrap();
        assert_eq!(v.add_points(a, b), v.encode(&[2, 1, 3]).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let f = PrimeField::new(11).unwrap();
        assert!(VectorSpace::with_cap(f, 7, 5_000_000).is_err());
        assert!(VectorSpace::with_cap(f, 6, 5_000_000).is_ok());
    }
}
