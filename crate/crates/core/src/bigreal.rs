//! Nonnegative reals carried in log2 space, so bound values like `2^(22d^3)`
//! stay representable and comparable far beyond any fixed-width integer.

use std::cmp::Ordering;
use std::fmt;

/// A nonnegative real `2^log2`. Zero is `log2 = -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigReal {
    log2: f64,
}

impl BigReal {
    pub const ZERO: BigReal = BigReal {
        log2: f64::NEG_INFINITY,
    };
    pub const ONE: BigReal = BigReal { log2: 0.0 };

    pub fn from_log2(log2: f64) -> Self {
        debug_assert!(!log2.is_nan());
        BigReal { log2 }
    }

    /// Converts a finite nonnegative float.
    pub fn from_value(v: f64) -> Self {
        assert!(v >= 0.0 && v.is_finite(), "BigReal needs a nonnegative finite value");
        BigReal { log2: v.log2() }
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_value(n as f64)
    }

    #[inline]
    pub fn log2(&self) -> f64 {
        self.log2
    }

    pub fn is_zero(&self) -> bool {
        self.log2 == f64::NEG_INFINITY
    }

    pub fn is_infinite(&self) -> bool {
        self.log2 == f64::INFINITY
    }

    /// The plain value, when it fits comfortably in an f64.
    pub fn value(&self) -> Option<f64> {
        if self.log2.abs() < 1000.0 || self.is_zero() {
            Some(self.log2.exp2())
        } else {
            None
        }
    }

    /// Ceiling as an integer, when representable exactly enough to matter.
    /// Values within a relative hair of an integer snap to it first, so an
    /// exactly-integral expression is not pushed up by float noise.
    pub fn ceil_u64(&self) -> Option<u64> {
        let v = self.value()?;
        if v > u64::MAX as f64 / 2.0 {
            return None;
        }
        let nearest = v.round();
        if (v - nearest).abs() <= nearest.abs() * 1e-9 {
            Some(nearest as u64)
        } else {
            Some(v.ceil() as u64)
        }
    }

    /// Approximate count of decimal digits of the integer part.
    pub fn digits10(&self) -> f64 {
        (self.log2 * std::f64::consts::LOG10_2).max(0.0) + 1.0
    }

    pub fn mul(&self, other: &BigReal) -> BigReal {
        if self.is_zero() || other.is_zero() {
            return BigReal::ZERO;
        }
        BigReal {
            log2: self.log2 + other.log2,
        }
    }

    pub fn div(&self, other: &BigReal) -> BigReal {
        BigReal {
            log2: self.log2 - other.log2,
        }
    }

    /// `self^e` for a real exponent.
    pub fn powf(&self, e: f64) -> BigReal {
        if self.is_zero() {
            return if e == 0.0 { BigReal::ONE } else { BigReal::ZERO };
        }
        BigReal { log2: self.log2 * e }
    }

    pub fn max(&self, other: &BigReal) -> BigReal {
        if self >= other {
            *self
        } else {
            *other
        }
    }

    pub fn cmp_u64(&self, n: u64) -> Ordering {
        self.partial_cmp(&BigReal::from_u64(n)).unwrap()
    }

    pub fn at_least_u64(&self, n: u64) -> bool {
        self.cmp_u64(n) != Ordering::Less
    }

    pub fn at_most_u64(&self, n: u64) -> bool {
        self.cmp_u64(n) != Ordering::Greater
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.log2.partial_cmp(&other.log2)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        match self.value() {
            Some(v) if v < 1e9 => write!(out, "{v:.6}"),
            _ => write!(out, "2^{:.3} (~{:.0} digits)", self.log2, self.digits10()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_small_values() {
        for n in [1u64, 2, 3, 100, 12345] {
            let b = BigReal::from_u64(n);
            assert!((b.value().unwrap() - n as f64).abs() < 1e-9);
            assert_eq!(b.cmp_u64(n), Ordering::Equal);
        }
        assert!(BigReal::ZERO.is_zero());
        assert_eq!(BigReal::ZERO.value(), Some(0.0));
    }

    #[test]
    fn arithmetic_in_log_space() {
        let a = BigReal::from_u64(8);
        let b = BigReal::from_u64(4);
        assert!((a.mul(&b).log2() - 5.0).abs() < 1e-12);
        assert!((a.div(&b).log2() - 1.0).abs() < 1e-12);
        assert!((a.powf(10.0).log2() - 30.0).abs() < 1e-12);
        assert_eq!(a.mul(&BigReal::ZERO), BigReal::ZERO);
    }

    #[test]
    fn astronomically_large_values_compare() {
        let huge = BigReal::from_log2(22.0 * 8.0); // 2^176
        let huger = BigReal::from_log2(22.0 * 27.0); // 2^594
        assert!(huge < huger);
        assert!(huge.at_least_u64(u64::MAX));
        assert!(huge.value().unwrap().is_finite());
        let overflow = BigReal::from_log2(3000.0);
        assert_eq!(overflow.value(), None);
        assert!(overflow > huger);
    }

    #[test]
    fn comparisons_consistent_with_integers() {
        // transitivity and agreement with integer order on a ladder
        let vals: Vec<BigReal> = (1..50u64).map(|n| BigReal::from_u64(n * n)).collect();
        for w in vals.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(BigReal::from_u64(10).at_most_u64(10));
        assert!(BigReal::from_u64(10).at_least_u64(10));
        assert!(!BigReal::from_u64(10).at_least_u64(11));
    }

    #[test]
    fn ceiling() {
        assert_eq!(BigReal::from_value(3640.2).ceil_u64(), Some(3641));
        assert_eq!(BigReal::from_u64(7).ceil_u64(), Some(7));
        assert_eq!(BigReal::from_log2(2000.0).ceil_u64(), None);
    }

    #[test]
    fn log_comparison_agrees_with_integer_comparison() {
        // deterministic pseudo-random pairs below 2^50, where log2 separates
        // distinct integers comfortably
        let mut x: u64 = 0x2545f4914f6cdd1d;
        let mut values = Vec::new();
        for _ in 0..500 {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            values.push(x >> 14);
        }
        for w in values.windows(2) {
            let (a, b) = (w[0], w[1]);
            let (ba, bb) = (BigReal::from_u64(a), BigReal::from_u64(b));
            assert_eq!(ba.partial_cmp(&bb).unwrap(), a.cmp(&b), "{a} vs {b}");
        }
    }
}
