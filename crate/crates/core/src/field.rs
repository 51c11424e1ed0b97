//! Prime fields F_p with small characteristic.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Largest characteristic accepted by [`Prime::new`].
pub const MAX_PRIME: u32 = 97;

/// A prime characteristic `2 <= p <= 97`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if (2..=MAX_PRIME).contains(&p) && is_prime(p as u64) {
            Ok(Prime(p))
        } else {
            Err(AlgebraError::InvalidPrime(p as u64))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.0
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero mod p.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0), "inverse of zero");
        self.pow(a, (self.0 - 2) as u64)
    }

    /// Returns `s` with `q == p^s`, if `q` is a positive power of `p`.
    pub fn log_of_power(self, q: u64) -> Option<u32> {
        let p = self.0 as u64;
        let (mut v, mut s) = (q, 0);
        while v > 1 && v % p == 0 {
            v /= p;
            s += 1;
        }
        (v == 1 && s >= 1).then_some(s)
    }
}

impl TryFrom<u32> for Prime {
    type Error = AlgebraError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, `k >= 1`.
pub fn prime_power_parts(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut v, mut k) = (q, 0);
    while v % p == 0 {
        v /= p;
        k += 1;
    }
    (v == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(101).is_err());
    }

    #[test]
    fn inverses() {
        let p = Prime::new(11).unwrap();
        for a in 1..11 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
    }

    #[test]
    fn prime_powers() {
        let p = Prime::new(7).unwrap();
        assert_eq!(p.log_of_power(49), Some(2));
        assert_eq!(p.log_of_power(7), Some(1));
        assert_eq!(p.log_of_power(1), None);
        assert_eq!(p.log_of_power(14), None);
        assert_eq!(prime_power_parts(8), Some((2, 3)));
        assert_eq!(prime_power_parts(12), None);
    }
}
