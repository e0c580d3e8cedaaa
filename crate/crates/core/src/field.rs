//! Arithmetic in the prime field Z/p.
//!
//! Scalars are stored as canonical residues `0..p`. Signs such as `(-1)^k`
//! are folded into residues as soon as they appear.

use crate::error::{AlgebraError, Result};

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field Z/p for an odd prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(AlgebraError::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// `h = (p - 1) / 2`.
    #[inline]
    pub fn half(&self) -> u32 {
        (self.p - 1) / 2
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u64;
        let mut b = (base % self.p) as u64;
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }

    /// Fermat inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.p - 2) as u64))
        }
    }

    /// `(-1)^e` as a residue.
    #[inline]
    pub fn sign(&self, e: u64) -> u32 {
        if e.is_multiple_of(2) {
            1
        } else {
            self.p - 1
        }
    }

    /// `n! mod p`.
    pub fn factorial(&self, n: u64) -> u32 {
        if n >= self.p as u64 {
            return 0;
        }
        (1..=n).fold(1u32, |acc, k| self.mul(acc, k as u32))
    }

    /// Binomial coefficient `C(n, k) mod p` via Lucas' theorem.
    pub fn binomial(&self, mut n: u64, mut k: u64) -> u32 {
        if k > n {
            return 0;
        }
        let p = self.p as u64;
        let mut acc = 1u32;
        while k > 0 || n > 0 {
            let (nd, kd) = (n % p, k % p);
            if kd > nd {
                return 0;
            }
            let num = self.factorial(nd);
            let den = self.mul(self.factorial(kd), self.factorial(nd - kd));
            acc = self.mul(acc, self.mul(num, self.inv(den).expect("digits below p")));
            n /= p;
            k /= p;
        }
        acc
    }

    /// Renders a residue as a signed representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert_eq!(PrimeField::new(7).unwrap().half(), 3);
    }

    #[test]
    fn inverses_and_signs() {
        let f = PrimeField::new(5).unwrap();
        for a in 1..5 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.sign(3), 4);
        assert_eq!(f.reduce(-1), 4);
        // Wilson
        assert_eq!(f.factorial(4), 4);
    }

    #[test]
    fn lucas_matches_pascal() {
        let f = PrimeField::new(3).unwrap();
        let mut row = vec![1u64];
        for n in 0..30u64 {
            for (k, c) in row.iter().enumerate() {
                assert_eq!(f.binomial(n, k as u64), (*c % 3) as u32, "C({n},{k})");
            }
            let mut next = vec![1u64; row.len() + 1];
            for k in 1..row.len() {
                next[k] = (row[k - 1] + row[k]) % 3;
            }
            row = next;
        }
    }
}
