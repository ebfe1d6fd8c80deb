//! Square matrices over `F_p`: the linear action on `V`, element orders,
//! minimal and characteristic polynomials, inverses and kernels.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::FpPolynomial;
use crate::space::VectorSpace;

/// Default cap on iterative order computation.
pub const DEFAULT_ORDER_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    dim: usize,
    /// row-major entries, length dim*dim
    entries: Vec<u64>,
}

impl FpMatrix {
    pub fn from_rows(field: PrimeField, rows: &[Vec<u64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::invalid("matrix rows must form a nonempty square"));
        }
        let p = field.modulus();
        let entries = rows.iter().flatten().map(|&e| e % p).collect();
        Ok(FpMatrix {
            field,
            dim,
            entries,
        })
    }

    pub fn from_flat(field: PrimeField, dim: usize, entries: Vec<u64>) -> Result<Self> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::invalid(format!(
                "expected {} entries for a {dim}x{dim} matrix, got {}",
                dim * dim,
                entries.len()
            )));
        }
        let p = field.modulus();
        Ok(FpMatrix {
            field,
            dim,
            entries: entries.into_iter().map(|e| e % p).collect(),
        })
    }

    pub fn identity(field: PrimeField, dim: usize) -> Self {
        Self::scalar(field, dim, 1)
    }

    /// The scalar matrix `c * I`.
    pub fn scalar(field: PrimeField, dim: usize, c: u64) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c % field.modulus();
        }
        FpMatrix {
            field,
            dim,
            entries,
        }
    }

    /// `-I`; equals `I` when p = 2.
    pub fn neg_identity(field: PrimeField, dim: usize) -> Self {
        Self::scalar(field, dim, field.neg(1))
    }

    /// Permutation matrix sending basis vector `e_i` to `e_{perm[i]}`.
    pub fn permutation(field: PrimeField, perm: &[usize]) -> Result<Self> {
        let dim = perm.len();
        let mut seen = vec![false; dim];
        for &img in perm {
            if img >= dim || seen[img] {
                return Err(Error::invalid("not a permutation"));
            }
            seen[img] = true;
        }
        let mut entries = vec![0; dim * dim];
        for (i, &img) in perm.iter().enumerate() {
            entries[img * dim + i] = 1;
        }
        Ok(FpMatrix {
            field,
            dim,
            entries,
        })
    }

    /// Companion matrix of a monic polynomial of degree >= 1.
    pub fn companion(poly: &FpPolynomial) -> Result<Self> {
        let field = poly.field();
        let dim = poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::invalid("companion matrix needs degree >= 1"))?;
        if !poly.is_monic() {
            return Err(Error::invalid("companion matrix needs a monic polynomial"));
        }
        let mut m = FpMatrix {
            field,
            dim,
            entries: vec![0; dim * dim],
        };
        for i in 1..dim {
            m.set(i, i - 1, 1);
        }
        for i in 0..dim {
            m.set(i, dim - 1, field.neg(poly.coeffs()[i]));
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        self.entries[row * self.dim + col] = value % self.field.modulus();
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    pub fn is_identity(&self) -> bool {
        self.as_scalar() == Some(1)
    }

    /// `Some(c)` when the matrix is the scalar matrix `c * I`.
    pub fn as_scalar(&self) -> Option<u64> {
        let c = self.get(0, 0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = if i == j { c } else { 0 };
                if self.get(i, j) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = f.add(out[i * n + j], f.mul(a, other.entries[k * n + j]));
                }
            }
        }
        FpMatrix {
            field: f,
            dim: n,
            entries: out,
        }
    }

    /// Matrix times column vector of coordinates.
    pub fn apply_coords(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.dim {
            return Err(Error::invalid(format!(
                "dimension mismatch: matrix is {}x{}, vector has {} coordinates",
                self.dim,
                self.dim,
                v.len()
            )));
        }
        let f = self.field;
        let p = f.modulus();
        if v.iter().any(|&c| c >= p) {
            return Err(Error::invalid("coordinate out of range"));
        }
        Ok(self.apply_coords_unchecked(v))
    }

    #[inline]
    pub fn apply_coords_unchecked(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let n = self.dim;
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0;
            for (j, &c) in v.iter().enumerate() {
                acc = f.add(acc, f.mul(self.entries[i * n + j], c));
            }
            *slot = acc;
        }
        out
    }

    /// Applies the matrix to a point of `V` given by its index.
    pub fn apply_point(&self, space: &VectorSpace, index: u64) -> u64 {
        debug_assert_eq!(space.dim(), self.dim);
        let coords = space.decode(index);
        let image = self.apply_coords_unchecked(&coords);
        space.encode(&image).expect("image coordinates in range")
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.field, self.dim);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mat_mul(&base);
            }
            base = base.mat_mul(&base);
            exp >>= 1;
        }
        acc
    }

    pub fn determinant(&self) -> u64 {
        let f = self.field;
        let n = self.dim;
        let mut m: Vec<Vec<u64>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            if pivot != col {
                m.swap(pivot, col);
                det = f.neg(det);
            }
            det = f.mul(det, m[col][col]);
            let inv = f.inv(m[col][col]).unwrap();
            for r in col + 1..n {
                let factor = f.mul(m[r][col], inv);
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = f.mul(factor, m[col][c]);
                    m[r][c] = f.sub(m[r][c], sub);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.determinant() != 0
    }

    pub fn inverse(&self) -> Result<Self> {
        let f = self.field;
        let n = self.dim;
        let mut m: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| m[r][col] != 0)
                .ok_or_else(|| Error::invalid("matrix is singular"))?;
            m.swap(pivot, col);
            let inv = f.inv(m[col][col]).unwrap();
            for c in 0..2 * n {
                m[col][c] = f.mul(m[col][c], inv);
            }
            for r in 0..n {
                if r == col || m[r][col] == 0 {
                    continue;
                }
                let factor = m[r][col];
                for c in 0..2 * n {
                    let sub = f.mul(factor, m[col][c]);
                    m[r][c] = f.sub(m[r][c], sub);
                }
            }
        }
        let rows: Vec<Vec<u64>> = m.into_iter().map(|row| row[n..].to_vec()).collect();
        FpMatrix::from_rows(f, &rows)
    }

    /// Least `n >= 1` with `M^n = I`, by iterated multiplication.
    pub fn order(&self, cap: u64) -> Result<u64> {
        if !self.is_invertible() {
            return Err(Error::invalid("order of a singular matrix"));
        }
        let mut acc = self.clone();
        let mut n = 1;
        while !acc.is_identity() {
            if n >= cap {
                return Err(Error::CapExceeded {
                    what: "matrix order iteration",
                    cap,
                    reached: n,
                });
            }
            acc = acc.mat_mul(self);
            n += 1;
        }
        Ok(n)
    }

    /// Evaluates a polynomial at this matrix by Horner's rule.
    pub fn poly_eval(&self, poly: &FpPolynomial) -> Self {
        let f = self.field;
        let n = self.dim;
        let mut acc = FpMatrix {
            field: f,
            dim: n,
            entries: vec![0; n * n],
        };
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mat_mul(self);
            for i in 0..n {
                let cur = acc.get(i, i);
                acc.set(i, i, f.add(cur, c));
            }
        }
        acc
    }

    /// Monic minimal polynomial, as the lcm of the local minimal polynomials
    /// of the standard basis vectors (Krylov dependency with coefficient
    /// tracking).
    pub fn min_poly(&self) -> FpPolynomial {
        let f = self.field;
        let mut result = FpPolynomial::one(f);
        for i in 0..self.dim {
            let mut e = vec![0u64; self.dim];
            e[i] = 1;
            let local = self.local_min_poly(e);
            result = result.lcm(&local);
            if result.degree() == Some(self.dim) {
                break;
            }
        }
        result
    }

    fn local_min_poly(&self, start: Vec<u64>) -> FpPolynomial {
        let f = self.field;
        // echelon rows over the Krylov sequence, each with the combination
        // expressing it in terms of M^j * start
        let mut rows: Vec<(Vec<u64>, usize, Vec<u64>)> = Vec::new();
        let mut w = start;
        for k in 0..=self.dim {
            let mut red = w.clone();
            let mut combo = vec![0u64; k + 1];
            combo[k] = 1;
            for (row, pivot, rcombo) in &rows {
                let c = red[*pivot];
                if c == 0 {
                    continue;
                }
                for (slot, &r) in red.iter_mut().zip(row) {
                    *slot = f.sub(*slot, f.mul(c, r));
                }
                for (j, &rc) in rcombo.iter().enumerate() {
                    combo[j] = f.sub(combo[j], f.mul(c, rc));
                }
            }
            match red.iter().position(|&c| c != 0) {
                None => return FpPolynomial::new(f, combo),
                Some(pivot) => {
                    let inv = f.inv(red[pivot]).unwrap();
                    for slot in red.iter_mut() {
                        *slot = f.mul(*slot, inv);
                    }
                    for slot in combo.iter_mut() {
                        *slot = f.mul(*slot, inv);
                    }
                    rows.push((red, pivot, combo));
                    w = self.apply_coords_unchecked(&w);
                }
            }
        }
        unreachable!("a dependency arises by step dim");
    }

    /// Monic characteristic polynomial via Hessenberg reduction.
    pub fn char_poly(&self) -> FpPolynomial {
        let f = self.field;
        let n = self.dim;
        let mut h: Vec<Vec<u64>> = (0..n).map(|i| self.row(i).to_vec()).collect();

        // similarity reduction to upper Hessenberg form
        for j in 0..n.saturating_sub(2) {
            let Some(pr) = (j + 1..n).find(|&r| h[r][j] != 0) else {
                continue;
            };
            if pr != j + 1 {
                h.swap(pr, j + 1);
                for row in h.iter_mut() {
                    row.swap(pr, j + 1);
                }
            }
            let pinv = f.inv(h[j + 1][j]).unwrap();
            for i in j + 2..n {
                let factor = f.mul(h[i][j], pinv);
                if factor == 0 {
                    continue;
                }
                for c in 0..n {
                    let sub = f.mul(factor, h[j + 1][c]);
                    h[i][c] = f.sub(h[i][c], sub);
                }
                for row in h.iter_mut() {
                    let add = f.mul(factor, row[i]);
                    row[j + 1] = f.add(row[j + 1], add);
                }
            }
        }

        // char polys of leading principal submatrices of the Hessenberg form
        let mut polys = vec![FpPolynomial::one(f)];
        for k in 1..=n {
            let mut pk = FpPolynomial::x_minus(f, h[k - 1][k - 1]).mul(&polys[k - 1]);
            let mut subdiag = 1u64;
            for i in (0..k - 1).rev() {
                subdiag = f.mul(subdiag, h[i + 1][i]);
                if subdiag == 0 {
                    break;
                }
                let coeff = f.mul(h[i][k - 1], subdiag);
                if coeff != 0 {
                    pk = pk.sub(&polys[i].scale(coeff));
                }
            }
            polys.push(pk);
        }
        polys.pop().unwrap()
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let f = self.field;
        let n = self.dim;
        let mut m: Vec<Vec<u64>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut rank = 0;
        for col in 0..n {
            let Some(pr) = (rank..n).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(pr, rank);
            let inv = f.inv(m[rank][col]).unwrap();
            for c in 0..n {
                m[rank][c] = f.mul(m[rank][c], inv);
            }
            for r in 0..n {
                if r == rank || m[r][col] == 0 {
                    continue;
                }
                let factor = m[r][col];
                for c in 0..n {
                    let sub = f.mul(factor, m[rank][c]);
                    m[r][c] = f.sub(m[r][c], sub);
                }
            }
            pivots.push((rank, col));
            rank += 1;
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![0u64; n];
            v[free] = 1;
            for &(r, c) in &pivots {
                v[c] = f.neg(m[r][free]);
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Display for FpMatrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            writeln!(out, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}
