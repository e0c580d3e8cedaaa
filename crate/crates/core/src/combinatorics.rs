//! p-adic digits, multinomials, Milnor index statistics and the scalar
//! `mu(q) = (h!)^q (-1)^{h q (q-1) / 2}`.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;

/// Base-p digits `alpha_0, alpha_1, ...` of a non-negative integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdicDigits {
    p: u64,
    digits: Vec<u32>,
}

impl PAdicDigits {
    pub fn new(r: u64, p: u32) -> Self {
        let p = p as u64;
        let mut digits = Vec::new();
        let mut rest = r;
        while rest > 0 {
            digits.push((rest % p) as u32);
            rest /= p;
        }
        PAdicDigits { p, digits }
    }

    /// `alpha_i`, zero for negative `i` and beyond the top digit.
    pub fn get(&self, i: i64) -> u32 {
        if i < 0 {
            0
        } else {
            self.digits.get(i as usize).copied().unwrap_or(0)
        }
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d as u64)
    }
}

pub fn p_adic_digits(r: u64, p: u32) -> PAdicDigits {
    PAdicDigits::new(r, p)
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k)
}

/// Coefficient of `y_1^{r_1} ... y_n^{r_n}` in `(1 + y_1 + ... + y_n)^b`,
/// reduced mod p. Zero when any `r_i < 0`, when `b < 0`, or when the
/// entries sum past `b`.
pub fn multinomial(b: i64, r: &[i64], field: &PrimeField) -> u32 {
    if b < 0 || r.iter().any(|&x| x < 0) {
        return 0;
    }
    let total: i64 = r.iter().sum();
    if total > b {
        return 0;
    }
    let mut den = factorial((b - total) as u64);
    for &x in r {
        den *= factorial(x as u64);
    }
    let q = factorial(b as u64) / den;
    let rem = q % BigUint::from(field.p());
    rem.to_u32_digits().first().copied().unwrap_or(0)
}

/// A Milnor basis index `(S, R)`: `S` strictly increasing, `R` of declared
/// length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MilnorIndex {
    pub s: Vec<u32>,
    pub r: Vec<u32>,
}

impl MilnorIndex {
    pub fn new(s: Vec<u32>, r: Vec<u32>) -> Result<Self> {
        if s.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::OutOfRange(format!("S must be strictly increasing: {s:?}")));
        }
        Ok(MilnorIndex { s, r })
    }

    pub fn single(r: u32) -> Self {
        MilnorIndex { s: vec![], r: vec![r] }
    }

    pub fn stats(&self, q: i64, p: u32) -> SeqStats {
        seq_stats(&self.s, &self.r, q, p)
    }

    /// Degree added by the operation: `sum (2p^s - 1) + sum r_i (2p^i - 2)`.
    pub fn degree(&self, p: u32) -> u64 {
        let p = p as u64;
        let s: u64 = self.s.iter().map(|&s| 2 * p.pow(s) - 1).sum();
        let r: u64 = self.r.iter().enumerate().map(|(i, &r)| r as u64 * (2 * p.pow(i as u32 + 1) - 2)).sum();
        s + r
    }
}

impl fmt::Display for MilnorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "St^{{{:?},{:?}}}", self.s, self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqStats {
    /// `|R| = sum (p^i - 1) r_i`.
    pub norm: u64,
    /// `r(S, R) = k + s_1 + ... + s_k + r_1 + 2 r_2 + ... + n r_n`.
    pub r_sr: u64,
    /// `R*_q = (q - 2 sum R, r_1, ..., r_{n-1})`.
    pub r_star: Vec<i64>,
    /// `q - l(S) - 2 sum R`; negative marks an inadmissible index.
    pub r0: i64,
}

pub fn seq_stats(s: &[u32], r: &[u32], q: i64, p: u32) -> SeqStats {
    let p = p as u64;
    let norm = r.iter().enumerate().map(|(i, &ri)| (p.pow(i as u32 + 1) - 1) * ri as u64).sum();
    let r_sr = s.len() as u64
        + s.iter().map(|&x| x as u64).sum::<u64>()
        + r.iter().enumerate().map(|(i, &ri)| (i as u64 + 1) * ri as u64).sum::<u64>();
    let sum_r: i64 = r.iter().map(|&x| x as i64).sum();
    let mut r_star = Vec::with_capacity(r.len());
    if !r.is_empty() {
        r_star.push(q - 2 * sum_r);
        r_star.extend(r[..r.len() - 1].iter().map(|&x| x as i64));
    }
    SeqStats { norm, r_sr, r_star, r0: q - s.len() as i64 - 2 * sum_r }
}

/// `R*_q` on its own.
pub fn r_star(r: &[u32], q: i64) -> Vec<i64> {
    seq_stats(&[], r, q, 3).r_star
}

/// `mu(q)^reps` mod p.
pub fn mu(q: u64, reps: u64, field: &PrimeField) -> u32 {
    let h = field.half() as u64;
    let hf = field.factorial(h);
    let parity = (h * q * q.saturating_sub(1) / 2) % 2;
    let single = field.mul(field.pow(hf, q), field.sign(parity));
    field.pow(single, reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn digits() {
        assert_eq!(p_adic_digits(0, 3).get(0), 0);
        let d = p_adic_digits(4, 3);
        assert_eq!((d.get(0), d.get(1), d.get(2), d.get(-1)), (1, 1, 0, 0));
        let d = p_adic_digits(7, 5);
        assert_eq!((d.get(0), d.get(1)), (2, 1));
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[1, 2], &f(5)), 12 % 5);
        assert_eq!(multinomial(4, &[1, 2], &f(7)), 12 % 7);
        assert_eq!(multinomial(1, &[1], &f(3)), 1);
        assert_eq!(multinomial(2, &[3], &f(3)), 0);
        assert_eq!(multinomial(2, &[-1, 1], &f(3)), 0);
    }

    #[test]
    fn stats() {
        let st = seq_stats(&[], &[0, 0], 2, 3);
        assert_eq!((st.norm, st.r_sr, st.r_star.clone(), st.r0), (0, 0, vec![2, 0], 2));
        let st = seq_stats(&[0], &[1, 0], 5, 3);
        assert_eq!((st.r_sr, st.norm), (2, 2));
        let st = seq_stats(&[], &[1, 1], 2, 3);
        assert_eq!(st.r0, -2);
        assert_eq!(MilnorIndex::new(vec![1, 0], vec![]).is_err(), true);
    }

    #[test]
    fn mu_values() {
        let f3 = f(3);
        assert_eq!(mu(0, 1, &f3), 1);
        assert_eq!(mu(2, 1, &f3), 2);
        assert_eq!(mu(3, 1, &f3), 2);
        // (h!)^{-1} mu(p^k) = (-1)^{hk}, so (-h!)^{-1} mu(p^k) = (-1)^{hk+1}
        for p in [3u32, 5, 7] {
            let fp = f(p);
            let h = fp.half() as u64;
            let hf_inv = fp.inv(fp.factorial(h)).unwrap();
            let minus_hf_inv = fp.inv(fp.neg(fp.factorial(h))).unwrap();
            for k in 0..4u32 {
                let m = mu((p as u64).pow(k), 1, &fp);
                assert_eq!(fp.mul(hf_inv, m), fp.sign(h * k as u64), "p={p} k={k}");
                assert_eq!(fp.mul(minus_hf_inv, m), fp.sign(h * k as u64 + 1), "p={p} k={k}");
            }
        }
    }
}
