//! Polynomials over `F_p`: arithmetic, gcd, and distinct-degree
//! factorization. Coefficients are stored ascending with no trailing zeros;
//! the zero polynomial has an empty coefficient list.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPolynomial {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl FpPolynomial {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        let p = field.modulus();
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPolynomial { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        FpPolynomial {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: PrimeField) -> Self {
        FpPolynomial::new(field, vec![1])
    }

    pub fn x(field: PrimeField) -> Self {
        FpPolynomial::new(field, vec![0, 1])
    }

    /// The monomial `x - a`.
    pub fn x_minus(field: PrimeField, a: u64) -> Self {
        FpPolynomial::new(field, vec![field.neg(a), 1])
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = f.add(a, b);
        }
        FpPolynomial::new(f, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = f.sub(a, b);
        }
        FpPolynomial::new(f, out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPolynomial::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FpPolynomial::new(f, out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let f = self.field;
        FpPolynomial::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Euclidean division; the divisor must be nonzero.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::invalid("polynomial division by zero"));
        }
        let f = self.field;
        let dd = divisor.degree().unwrap();
        let lead_inv = f.inv(divisor.leading_coeff())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((FpPolynomial::zero(f), self.clone()));
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i - dd] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let pos = i - dd + j;
                rem[pos] = f.sub(rem[pos], f.mul(c, dc));
            }
        }
        Ok((FpPolynomial::new(f, quot), FpPolynomial::new(f, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic gcd, with the convention `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.make_monic()
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPolynomial::zero(self.field);
        }
        let g = self.gcd(other);
        let (q, r) = self.mul(other).divmod(&g).unwrap();
        debug_assert!(r.is_zero());
        q.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading_coeff()).unwrap())
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, i as u64 % f.modulus()))
            .collect();
        FpPolynomial::new(f, coeffs)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let f = self.field;
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub fn mulmod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// `self^exp mod modulus` by binary exponentiation.
    pub fn powmod(&self, mut exp: u64, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = FpPolynomial::one(self.field).rem(modulus)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            base = base.mulmod(&base, modulus)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            _ => {
                let g = self.gcd(&self.derivative());
                g.degree() == Some(0)
            }
        }
    }

    /// Counts of irreducible factors by degree, for a squarefree monic input.
    ///
    /// The output maps each factor degree `e` to the number of degree-`e`
    /// irreducible factors; the degree-weighted counts sum to `deg f`.
    pub fn distinct_degree_factor_counts(&self) -> Result<BTreeMap<usize, usize>> {
        Ok(self
            .distinct_degree_factor_products()?
            .into_iter()
            .map(|(e, prod)| (e, prod.degree().unwrap() / e))
            .collect())
    }

    /// For each degree `e`, the product of all degree-`e` irreducible factors
    /// of a squarefree monic input. Only nontrivial products are returned.
    pub fn distinct_degree_factor_products(&self) -> Result<BTreeMap<usize, FpPolynomial>> {
        let deg = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::invalid("distinct-degree factorization needs degree >= 1"))?;
        if !self.is_monic() {
            return Err(Error::invalid("distinct-degree factorization needs a monic input"));
        }
        if !self.is_squarefree() {
            return Err(Error::invalid(format!(
                "polynomial {self} is not squarefree"
            )));
        }
        let f = self.field;
        let p = f.modulus();
        let x = FpPolynomial::x(f);
        let mut products = BTreeMap::new();
        let mut g = self.clone();
        // frobenius power x^(p^e) mod g, advanced one Frobenius step per round
        let mut h = x.rem(&g)?;
        let mut e = 0;
        while g.degree().unwrap() > 0 && 2 * (e + 1) <= g.degree().unwrap() {
            e += 1;
            h = h.powmod(p, &g)?;
            let d = h.sub(&x).gcd(&g);
            if d.degree().unwrap_or(0) > 0 {
                products.insert(e, d.clone());
                g = g.divmod(&d)?.0;
                h = h.rem(&g)?;
            }
        }
        if g.degree().unwrap() > 0 {
            let e = g.degree().unwrap();
            products.insert(e, g.make_monic());
        }
        debug_assert_eq!(
            products.values().map(|q| q.degree().unwrap()).sum::<usize>(),
            deg
        );
        Ok(products)
    }

    /// Irreducibility over `F_p` via distinct-degree factorization.
    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(1) => true,
            Some(d) => {
                if !self.is_squarefree() {
                    return false;
                }
                let counts = self
                    .make_monic()
                    .distinct_degree_factor_counts()
                    .expect("squarefree monic");
                counts.len() == 1 && counts.get(&d) == Some(&1)
            }
        }
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(out, "{c}")?,
                (1, 1) => write!(out, "x")?,
                (1, _) => write!(out, "{c}x")?,
                (_, 1) => write!(out, "x^{i}")?,
                _ => write!(out, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The monic irreducible of the given degree whose coefficient tuple
/// `(c_0, ..., c_{deg-1})` is least in the mixed-radix order with `c_0` the
/// fastest-moving digit, i.e. least as the base-p integer `sum c_i p^i`.
pub fn least_irreducible(field: PrimeField, degree: usize) -> Result<FpPolynomial> {
    if degree == 0 {
        return Err(Error::invalid("no irreducible of degree 0"));
    }
    let p = field.modulus();
    let total = (p as u128).checked_pow(degree as u32).ok_or_else(|| {
        Error::invalid("degree too large for modulus search")
    })?;
    let mut idx: u128 = 0;
    while idx < total {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut r = idx;
        for _ in 0..degree {
            coeffs.push((r % p as u128) as u64);
            r /= p as u128;
        }
        coeffs.push(1);
        let cand = FpPolynomial::new(field, coeffs);
        if cand.is_irreducible() {
            return Ok(cand);
        }
        idx += 1;
    }
    unreachable!("irreducibles of every degree exist over F_p");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, coeffs: &[u64]) -> FpPolynomial {
        FpPolynomial::new(fp(p), coeffs.to_vec())
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        let f = poly(5, &[1, 2, 0, 0]);
        assert_eq!(f.degree(), Some(1));
        assert!(poly(5, &[0]).is_zero());
    }

    #[test]
    fn divmod_reconstructs() {
        let a = poly(7, &[3, 0, 5, 1, 2]);
        let b = poly(7, &[4, 1, 6]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(b.mul(&q).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_common_factor() {
        // (x+1)(x+2) and (x+1)(x+3) over F_7
        let a = poly(7, &[1, 1]).mul(&poly(7, &[2, 1]));
        let b = poly(7, &[1, 1]).mul(&poly(7, &[3, 1]));
        assert_eq!(a.gcd(&b), poly(7, &[1, 1]));
        // gcd with zero is the monic of the other argument
        let z = FpPolynomial::zero(fp(7));
        assert_eq!(a.scale(3).gcd(&z), a.make_monic());
    }

    #[test]
    fn ddf_counts_examples() {
        // x^2 + 1 over F_3 has no roots, so it is irreducible
        let counts = poly(3, &[1, 0, 1]).distinct_degree_factor_counts().unwrap();
        assert_eq!(counts, BTreeMap::from([(2, 1)]));

        // (x-1)(x-2) over F_5 splits into two linear factors
        let f = poly(5, &[4, 1]).mul(&poly(5, &[3, 1]));
        let counts = f.distinct_degree_factor_counts().unwrap();
        assert_eq!(counts, BTreeMap::from([(1, 2)]));

        // the fifth cyclotomic polynomial over F_3: ord(3 mod 5) = 4
        let counts = poly(3, &[1, 1, 1, 1, 1])
            .distinct_degree_factor_counts()
            .unwrap();
        assert_eq!(counts, BTreeMap::from([(4, 1)]));
    }

    #[test]
    fn ddf_rejects_non_squarefree() {
        let sq = poly(5, &[1, 1]).mul(&poly(5, &[1, 1]));
        assert!(sq.distinct_degree_factor_counts().is_err());
        // derivative-zero case: x^5 + 1 = (x+1)^5 over F_5
        let frob = poly(5, &[1, 0, 0, 0, 0, 1]);
        assert!(frob.distinct_degree_factor_counts().is_err());
    }

    #[test]
    fn ddf_products_multiply_back() {
        // mixed-degree squarefree example over F_3:
        // (x)(x+1)(x^2+1) has one factor of degree 2 and two of degree 1
        let f = poly(3, &[0, 1])
            .mul(&poly(3, &[1, 1]))
            .mul(&poly(3, &[1, 0, 1]));
        let prods = f.distinct_degree_factor_products().unwrap();
        assert_eq!(prods.len(), 2);
        let mut back = FpPolynomial::one(fp(3));
        for prod in prods.values() {
            back = back.mul(prod);
        }
        assert_eq!(back, f.make_monic());
        let counts = f.distinct_degree_factor_counts().unwrap();
        assert_eq!(counts, BTreeMap::from([(1, 2), (2, 1)]));
    }

    #[test]
    fn irreducibility_vs_brute_force_roots() {
        // degree-2 polynomials are irreducible exactly when they have no root
        let p = 7;
        for c0 in 0..p {
            for c1 in 0..p {
                let f = poly(p, &[c0, c1, 1]);
                let has_root = (0..p).any(|x| f.eval(x) == 0);
                assert_eq!(f.is_irreducible(), !has_root, "{f}");
            }
        }
    }

    #[test]
    fn least_irreducible_is_minimal() {
        let f = least_irreducible(fp(3), 2).unwrap();
        // scan order: c0 fastest; x^2+1 encodes as 1, nothing smaller works
        assert_eq!(f, poly(3, &[1, 0, 1]));
        let g = least_irreducible(fp(2), 4).unwrap();
        assert_eq!(g, poly(2, &[1, 1, 0, 0, 1])); // x^4 + x + 1
        assert!(g.is_irreducible());
    }

    #[test]
    fn powmod_fermat() {
        // x^p = x mod (x^p - x) components: check x^(p-1) = 1 mod (x - a), a != 0
        let f = fp(11);
        let x = FpPolynomial::x(f);
        for a in 1..11 {
            let m = FpPolynomial::x_minus(f, a);
            let r = x.powmod(10, &m).unwrap();
            assert_eq!(r, FpPolynomial::one(f));
        }
    }
}
