//! Echelonized subspaces of `F_p^d` and the spin closure under a set of
//! matrices. The reduced row echelon representation makes containment tests
//! and point enumeration canonical.

use crate::field::PrimeField;
use crate::matrix::FpMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    /// RREF rows, ordered by pivot column.
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn empty(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        let mut s = Subspace::empty(field, ambient_dim);
        for i in 0..ambient_dim {
            let mut v = vec![0; ambient_dim];
            v[i] = 1;
            s.insert(&v);
        }
        s
    }

    pub fn from_vectors(field: PrimeField, ambient_dim: usize, vectors: &[Vec<u64>]) -> Self {
        let mut s = Subspace::empty(field, ambient_dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    /// Fully reduces `v` against the basis.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut red = v.to_vec();
        for (row, &pivot) in self.rows.iter().zip(&self.pivots) {
            let c = red[pivot];
            if c == 0 {
                continue;
            }
            for (slot, &r) in red.iter_mut().zip(row) {
                *slot = f.sub(*slot, f.mul(c, r));
            }
        }
        red
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Inserts a vector, keeping reduced row echelon form. Returns whether
    /// the dimension grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.ambient_dim);
        let f = self.field;
        let mut red = self.reduce(v);
        let Some(pivot) = red.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = f.inv(red[pivot]).unwrap();
        for slot in red.iter_mut() {
            *slot = f.mul(*slot, inv);
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            let c = row[pivot];
            if c == 0 {
                continue;
            }
            for (slot, &r) in row.iter_mut().zip(&red) {
                *slot = f.sub(*slot, f.mul(c, r));
            }
        }
        let pos = self.pivots.partition_point(|&pc| pc < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, red);
        true
    }

    /// Number of points `p^dim`.
    pub fn point_count(&self) -> u64 {
        self.field.modulus().pow(self.dim() as u32)
    }

    /// The point whose basis-coefficient tuple encodes `code` in mixed radix
    /// (first basis row = fastest digit). Code 0 is the zero vector.
    pub fn point_by_code(&self, mut code: u64) -> Vec<u64> {
        let f = self.field;
        let p = f.modulus();
        let mut v = vec![0u64; self.ambient_dim];
        for row in &self.rows {
            let c = code % p;
            code /= p;
            if c != 0 {
                for (slot, &r) in v.iter_mut().zip(row) {
                    *slot = f.add(*slot, f.mul(c, r));
                }
            }
        }
        v
    }

    /// Inverse of `point_by_code` for points of the subspace; reads the
    /// coefficients off the pivot coordinates of the RREF basis.
    pub fn code_of_point(&self, v: &[u64]) -> u64 {
        let p = self.field.modulus();
        let mut code = 0u64;
        let mut mult = 1u64;
        for &pivot in &self.pivots {
            code += v[pivot] * mult;
            mult *= p;
        }
        code
    }
}

/// Smallest subspace containing the seeds and closed under the matrices.
pub fn spin_closure(field: PrimeField, dim: usize, seeds: &[Vec<u64>], gens: &[FpMatrix]) -> Subspace {
    let mut sub = Subspace::empty(field, dim);
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for s in seeds {
        if sub.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if sub.is_full() {
            break;
        }
        for g in gens {
            let w = g.apply_coords_unchecked(&v);
            if sub.insert(&w) {
                queue.push(w);
            }
        }
    }
    sub
}

/// Intersection of two subspaces by the Zassenhaus double-block trick.
pub fn intersection(a: &Subspace, b: &Subspace) -> Subspace {
    let f = a.field();
    let n = a.ambient_dim();
    debug_assert_eq!(n, b.ambient_dim());
    // rows (u | u) for u in a, (w | 0) for w in b; echelonize; rows with zero
    // left half carry a basis of the intersection in the right half
    let mut block = Subspace::empty(f, 2 * n);
    for u in a.basis() {
        let mut row = u.clone();
        row.extend_from_slice(u);
        block.insert(&row);
    }
    for w in b.basis() {
        let mut row = w.clone();
        row.resize(2 * n, 0);
        block.insert(&row);
    }
    let mut result = Subspace::empty(f, n);
    for row in block.basis() {
        if row[..n].iter().all(|&c| c == 0) {
            result.insert(&row[n..]);
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn insert_tracks_dimension() {
        let mut s = Subspace::empty(fp(5), 3);
        assert!(s.insert(&[1, 2, 3]));
        assert!(!s.insert(&[2, 4, 1])); // 2 * first
        assert!(s.insert(&[0, 1, 0]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[1, 0, 3]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn point_codes_roundtrip() {
        let s = Subspace::from_vectors(fp(3), 4, &[vec![1, 0, 2, 0], vec![0, 1, 1, 0]]);
        assert_eq!(s.dim(), 2);
        for code in 0..s.point_count() {
            let v = s.point_by_code(code);
            assert!(s.contains(&v));
            assert_eq!(s.code_of_point(&v), code);
        }
    }

    #[test]
    fn spin_under_rotation_fills_plane() {
        let f = fp(5);
        let rot = FpMatrix::from_rows(f, &[vec![0, 4], vec![1, 0]]).unwrap();
        let s = spin_closure(f, 2, &[vec![1, 0]], &[rot]);
        assert!(s.is_full());
        let diag = FpMatrix::from_rows(f, &[vec![2, 0], vec![0, 1]]).unwrap();
        let line = spin_closure(f, 2, &[vec![1, 0]], &[diag]);
        assert_eq!(line.dim(), 1);
    }

    #[test]
    fn intersection_of_planes_in_3space() {
        let f = fp(7);
        let a = Subspace::from_vectors(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let b = Subspace::from_vectors(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let i = intersection(&a, &b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[0, 3, 0]));
        // intersection with itself
        let ii = intersection(&a, &a);
        assert_eq!(ii.dim(), 2);
        assert!(ii.contains_subspace(&a) && a.contains_subspace(&ii));
    }
}
