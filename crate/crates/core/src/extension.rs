//! The extension field `F_q`, `q = p^f`, realized as `F_p[x]/(modulus)`.
//! Elements share the mixed-radix index encoding of the point space, so a
//! multiplication matrix acts on exactly the same indices the sumset engine
//! uses.

use crate::error::{Error, Result};
use crate::field::{order_given_group_exponent, PrimeField};
use crate::matrix::FpMatrix;
use crate::poly::{least_irreducible, FpPolynomial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionFieldSpec {
    base: PrimeField,
    degree: usize,
    modulus: FpPolynomial,
}

impl ExtensionFieldSpec {
    /// Wraps a monic modulus after checking irreducibility by
    /// distinct-degree factorization.
    pub fn new(base: PrimeField, modulus: FpPolynomial) -> Result<Self> {
        let degree = modulus
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::invalid("modulus must have degree >= 1"))?;
        if modulus.field() != base {
            return Err(Error::invalid("modulus is over a different field"));
        }
        if !modulus.is_monic() {
            return Err(Error::invalid("modulus must be monic"));
        }
        if !modulus.is_irreducible() {
            return Err(Error::invalid(format!(
                "modulus {modulus} is reducible over F_{}",
                base.modulus()
            )));
        }
        base.modulus()
            .checked_pow(degree as u32)
            .ok_or_else(|| Error::invalid("field order p^f overflows"))?;
        Ok(ExtensionFieldSpec {
            base,
            degree,
            modulus,
        })
    }

    /// `F_{p^f}` with the canonical modulus: the monic irreducible of degree
    /// `f` least in the base-p encoding of its coefficient tuple.
    pub fn with_least_modulus(base: PrimeField, degree: usize) -> Result<Self> {
        ExtensionFieldSpec::new(base, least_irreducible(base, degree)?)
    }

    #[inline]
    pub fn base(&self) -> PrimeField {
        self.base
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &FpPolynomial {
        &self.modulus
    }

    /// The field order `q = p^f`.
    pub fn q(&self) -> u64 {
        self.base.modulus().pow(self.degree as u32)
    }

    pub fn element_from_index(&self, index: u64) -> FpPolynomial {
        debug_assert!(index < self.q());
        let p = self.base.modulus();
        let mut coeffs = Vec::with_capacity(self.degree);
        let mut r = index;
        for _ in 0..self.degree {
            coeffs.push(r % p);
            r /= p;
        }
        FpPolynomial::new(self.base, coeffs)
    }

    pub fn index_of_element(&self, element: &FpPolynomial) -> u64 {
        let p = self.base.modulus();
        let mut idx = 0;
        let mut mult = 1;
        for i in 0..self.degree {
            idx += element.coeffs().get(i).copied().unwrap_or(0) * mult;
            mult *= p;
        }
        idx
    }

    pub fn mul_elements(&self, a: &FpPolynomial, b: &FpPolynomial) -> FpPolynomial {
        a.mulmod(b, &self.modulus).expect("modulus is nonzero")
    }

    pub fn pow_element(&self, a: &FpPolynomial, exp: u64) -> FpPolynomial {
        a.powmod(exp, &self.modulus).expect("modulus is nonzero")
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FpPolynomial) -> Result<u64> {
        if a.rem(&self.modulus)?.is_zero() {
            return Err(Error::invalid("0 has no multiplicative order"));
        }
        let one = FpPolynomial::one(self.base);
        Ok(order_given_group_exponent(self.q() - 1, |e| {
            u64::from(self.pow_element(a, e) == one)
        }))
    }

    /// A generator of `F_q^x`. The class of `x` is preferred (it makes the
    /// multiplication matrix a companion matrix); otherwise the element of
    /// least index with full order is returned. For `q = 2` the group is
    /// trivial and 1 generates it.
    pub fn multiplicative_generator(&self) -> FpPolynomial {
        let full = self.q() - 1;
        if full == 1 {
            return FpPolynomial::one(self.base);
        }
        if self.degree >= 2 {
            let x = FpPolynomial::x(self.base);
            if self.element_order(&x).unwrap() == full {
                return x;
            }
        }
        for idx in 2..self.q() {
            let cand = self.element_from_index(idx);
            if self.element_order(&cand).unwrap() == full {
                return cand;
            }
        }
        unreachable!("F_q^x is cyclic");
    }

    /// The matrix of multiplication by `gamma` in the basis `1, x, ..,
    /// x^(f-1)`: column `j` holds the coordinates of `gamma * x^j`.
    pub fn multiplication_matrix(&self, gamma: &FpPolynomial) -> FpMatrix {
        let n = self.degree;
        let mut m = FpMatrix::scalar(self.base, n, 0);
        let x = FpPolynomial::x(self.base);
        let mut col = gamma.rem(&self.modulus).unwrap();
        for j in 0..n {
            for i in 0..n {
                m.set(i, j, col.coeffs().get(i).copied().unwrap_or(0));
            }
            col = self.mul_elements(&col, &x);
        }
        m
    }
}

/// True iff the order-`m` subgroup of `F_{p^f}^x` lies in a proper subfield,
/// i.e. `m` divides `p^e - 1` for a proper divisor `e` of `f`. Such a
/// subgroup cannot generate `F_q` additively.
pub fn subgroup_lies_in_proper_subfield(p: u64, f: usize, m: u64) -> bool {
    (1..f).filter(|e| f % e == 0).any(|e| {
        let sub_order = p.pow(e as u32) - 1;
        sub_order % m == 0
    })
}

/// Orders `m` for which the order-`m` subgroup generates `F_q` additively:
/// the divisors of `q - 1` not confined to a proper subfield.
pub fn additively_generating_orders(p: u64, f: usize) -> Vec<u64> {
    let q = p.pow(f as u32);
    crate::field::divisors(q - 1)
        .into_iter()
        .filter(|&m| m > 1 && !subgroup_lies_in_proper_subfield(p, f, m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::divisors;

    fn fp(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn canonical_moduli() {
        let f9 = ExtensionFieldSpec::with_least_modulus(fp(3), 2).unwrap();
        assert_eq!(f9.modulus(), &FpPolynomial::new(fp(3), vec![1, 0, 1]));
        assert_eq!(f9.q(), 9);
        let f16 = ExtensionFieldSpec::with_least_modulus(fp(2), 4).unwrap();
        assert_eq!(f16.q(), 16);
        // reducible modulus rejected
        let sq = FpPolynomial::new(fp(3), vec![2, 0, 1]); // x^2 + 2 = (x-1)(x+1)
        assert!(ExtensionFieldSpec::new(fp(3), sq).is_err());
    }

    #[test]
    fn index_roundtrip_and_multiplication() {
        let f9 = ExtensionFieldSpec::with_least_modulus(fp(3), 2).unwrap();
        for idx in 0..9 {
            let e = f9.element_from_index(idx);
            assert_eq!(f9.index_of_element(&e), idx);
        }
        // (x)(x) = x^2 = -1 = 2 in F_9 with modulus x^2 + 1
        let x = f9.element_from_index(3);
        let sq = f9.mul_elements(&x, &x);
        assert_eq!(f9.index_of_element(&sq), 2);
    }

    #[test]
    fn generator_has_full_order() {
        for (p, f) in [(3u64, 2usize), (2, 4), (5, 2), (7, 1), (2, 6)] {
            let ext = ExtensionFieldSpec::with_least_modulus(fp(p), f).unwrap();
            let g = ext.multiplicative_generator();
            assert_eq!(ext.element_order(&g).unwrap(), ext.q() - 1, "p={p} f={f}");
        }
    }

    #[test]
    fn multiplication_matrix_is_companion_for_primitive_modulus() {
        // x^4 + x + 1 is primitive over F_2, so gamma = x and the matrix is
        // the companion matrix
        let f16 = ExtensionFieldSpec::with_least_modulus(fp(2), 4).unwrap();
        let g = f16.multiplicative_generator();
        assert_eq!(g, FpPolynomial::x(fp(2)));
        let m = f16.multiplication_matrix(&g);
        assert_eq!(m, FpMatrix::companion(f16.modulus()).unwrap());
        assert_eq!(m.order(100).unwrap(), 15);
    }

    #[test]
    fn multiplication_matrix_respects_field_product() {
        let f9 = ExtensionFieldSpec::with_least_modulus(fp(3), 2).unwrap();
        let g = f9.multiplicative_generator();
        let m = f9.multiplication_matrix(&g);
        // applying the matrix to the coordinates of a equals the product g*a
        for idx in 0..9u64 {
            let a = f9.element_from_index(idx);
            let want = f9.index_of_element(&f9.mul_elements(&g, &a));
            let coords: Vec<u64> = (0..2)
                .map(|i| a.coeffs().get(i).copied().unwrap_or(0))
                .collect();
            let image = m.apply_coords(&coords).unwrap();
            let got = image[0] + 3 * image[1];
            assert_eq!(got, want);
        }
    }

    #[test]
    fn proper_subfield_detection() {
        // order 3 subgroup of F_16^x lies in F_4
        assert!(subgroup_lies_in_proper_subfield(2, 4, 3));
        assert!(!subgroup_lies_in_proper_subfield(2, 4, 5));
        assert!(!subgroup_lies_in_proper_subfield(2, 4, 15));
        // in a prime field nothing is confined
        for m in divisors(6) {
            assert!(!subgroup_lies_in_proper_subfield(7, 1, m));
        }
        assert_eq!(additively_generating_orders(2, 4), vec![5, 15]);
        assert_eq!(additively_generating_orders(3, 2), vec![4, 8]);
    }

    #[test]
    fn degree_one_field_is_the_prime_field() {
        let f7 = ExtensionFieldSpec::with_least_modulus(fp(7), 1).unwrap();
        assert_eq!(f7.q(), 7);
        let g = f7.multiplicative_generator();
        assert_eq!(f7.element_order(&g).unwrap(), 6);
        let m = f7.multiplication_matrix(&g);
        assert_eq!(m.dim(), 1);
        assert_eq!(m.get(0, 0), f7.index_of_element(&g));
    }
}
