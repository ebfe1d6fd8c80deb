//! Arithmetic in the prime field `F_p` and small number-theoretic helpers.

use crate::error::{Error, Result};

/// The prime field `F_p`. Elements are residues in `[0, p)` stored as `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Constructs `F_p`, verifying primality by trial division.
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn is_odd(&self) -> bool {
        self.p != 2
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::invalid("division by zero in F_p"));
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Multiplicative order of `a` in `F_p^×`.
    pub fn element_order(&self, a: u64) -> Result<u64> {
        if a % self.p == 0 {
            return Err(Error::invalid("0 has no multiplicative order"));
        }
        Ok(order_given_group_exponent(self.p - 1, |e| self.pow(a, e)))
    }

    /// A generator of `F_p^×`.
    pub fn primitive_root(&self) -> u64 {
        if self.p == 2 {
            return 1;
        }
        let phi = self.p - 1;
        let prime_factors = distinct_prime_factors(phi);
        'candidate: for g in 2..self.p {
            for &q in &prime_factors {
                if self.pow(g, phi / q) == 1 {
                    continue 'candidate;
                }
            }
            return g;
        }
        unreachable!("F_p^x is cyclic, a generator exists");
    }

    /// A generator of the unique subgroup of `F_p^×` of the given order.
    pub fn subgroup_generator(&self, order: u64) -> Result<u64> {
        if order == 0 || (self.p - 1) % order != 0 {
            return Err(Error::invalid(format!(
                "{} does not divide p-1 = {}",
                order,
                self.p - 1
            )));
        }
        Ok(self.pow(self.primitive_root(), (self.p - 1) / order))
    }

    /// The elements of the unique subgroup of `F_p^×` of the given order, sorted.
    pub fn subgroup_elements(&self, order: u64) -> Result<Vec<u64>> {
        let g = self.subgroup_generator(order)?;
        let mut elems = Vec::with_capacity(order as usize);
        let mut x = 1;
        for _ in 0..order {
            elems.push(x);
            x = self.mul(x, g);
        }
        debug_assert_eq!(x, 1);
        elems.sort_unstable();
        Ok(elems)
    }
}

/// Order of a group element given a multiple `n` of the exponent of the group,
/// using `pow(e) = x^e` and prime-by-prime reduction of `n`.
pub fn order_given_group_exponent(n: u64, pow: impl Fn(u64) -> u64) -> u64 {
    debug_assert_eq!(pow(n), 1);
    let mut ord = n;
    for q in distinct_prime_factors(n) {
        while ord % q == 0 && pow(ord / q) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Primality by trial division; adequate for desk-scale moduli.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut factors = Vec::new();
    if n % 2 == 0 {
        factors.push(2);
        while n % 2 == 0 {
            n /= 2;
        }
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 2;
    }
    if n > 1 {
        factors.push(n);
    }
    factors
}

/// Distinct prime factors of a `u128`, ascending. Trial division; errors out
/// rather than stalling when a cofactor is too large to factor this way.
pub fn distinct_prime_factors_u128(mut n: u128) -> Result<Vec<u128>> {
    const TRIAL_LIMIT: u128 = 10_000_000;
    let mut factors = Vec::new();
    if n % 2 == 0 {
        factors.push(2);
        while n % 2 == 0 {
            n /= 2;
        }
    }
    let mut d: u128 = 3;
    while d * d <= n && d <= TRIAL_LIMIT {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 2;
    }
    if n > 1 {
        if n > TRIAL_LIMIT * TRIAL_LIMIT {
            return Err(Error::invalid(format!(
                "cofactor {n} too large for trial-division factorization"
            )));
        }
        factors.push(n);
    }
    Ok(factors)
}

/// All divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    divs
}
