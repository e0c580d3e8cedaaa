//! Monomials of E(x_1..x_m) (x) P(y_1..y_m).
//!
//! A monomial is stored as a bitmask of exterior generators (always read in
//! increasing index order) and a fixed-width exponent vector. Indices are
//! zero-based in the Rust API; the text grammar and JSON use `x1`, `y1`, ...

use std::cmp::Ordering;

use crate::error::{AlgebraError, Result};

/// Largest number of (x, y) generator pairs an element may use.
pub const MAX_PAIRS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    xs: u16,
    ys: [u32; MAX_PAIRS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { xs: 0, ys: [0; MAX_PAIRS] };

    /// Builds a monomial from a strictly increasing exterior index list and
    /// an exponent vector.
    pub fn new(xs: &[usize], ys: &[u32]) -> Result<Self> {
        if ys.len() > MAX_PAIRS {
            return Err(AlgebraError::TooManyPairs(ys.len()));
        }
        let mut mask = 0u16;
        for (k, &i) in xs.iter().enumerate() {
            if i >= MAX_PAIRS {
                return Err(AlgebraError::TooManyPairs(i + 1));
            }
            if k > 0 && xs[k - 1] >= i {
                return Err(AlgebraError::OutOfRange(format!(
                    "exterior indices must be strictly increasing: {xs:?}"
                )));
            }
            mask |= 1 << i;
        }
        let mut arr = [0u32; MAX_PAIRS];
        arr[..ys.len()].copy_from_slice(ys);
        Ok(Monomial { xs: mask, ys: arr })
    }

    #[inline]
    pub fn from_raw(xs: u16, ys: [u32; MAX_PAIRS]) -> Self {
        Monomial { xs, ys }
    }

    pub fn x(i: usize) -> Self {
        Monomial { xs: 1 << i, ys: [0; MAX_PAIRS] }
    }

    pub fn y(i: usize, e: u32) -> Self {
        let mut ys = [0; MAX_PAIRS];
        ys[i] = e;
        Monomial { xs: 0, ys }
    }

    #[inline]
    pub fn x_mask(&self) -> u16 {
        self.xs
    }

    /// Exterior indices in increasing order.
    pub fn xs(&self) -> impl Iterator<Item = usize> + '_ {
        (0..MAX_PAIRS).filter(move |i| self.xs >> i & 1 == 1)
    }

    #[inline]
    pub fn ys(&self) -> &[u32; MAX_PAIRS] {
        &self.ys
    }

    #[inline]
    pub fn y_exp(&self, i: usize) -> u32 {
        self.ys[i]
    }

    #[inline]
    pub fn x_len(&self) -> u32 {
        self.xs.count_ones()
    }

    #[inline]
    pub fn y_total(&self) -> u32 {
        self.ys.iter().sum()
    }

    /// `|xs| + 2 * sum(ys)`.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.x_len() + 2 * self.y_total()
    }

    #[inline]
    pub fn is_pure_polynomial(&self) -> bool {
        self.xs == 0
    }

    /// Highest pair index touched, if any.
    pub fn max_index(&self) -> Option<usize> {
        (0..MAX_PAIRS).rev().find(|&i| self.xs >> i & 1 == 1 || self.ys[i] != 0)
    }

    /// Product with Koszul sign. Returns `None` when an exterior generator
    /// would be squared, otherwise `(negative, product)`.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        if self.xs & other.xs != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut b = other.xs;
        while b != 0 {
            let j = b.trailing_zeros();
            // generators of `self` sitting above j must hop over x_j
            inversions += (self.xs >> j).count_ones();
            b &= b - 1;
        }
        let mut ys = self.ys;
        for (a, e) in ys.iter_mut().zip(other.ys.iter()) {
            *a += e;
        }
        Some((inversions % 2 == 1, Monomial { xs: self.xs | other.xs, ys }))
    }

    /// Whether `self` divides `other` in the polynomial part (exterior parts
    /// must both be empty).
    pub fn divides(&self, other: &Monomial) -> bool {
        self.xs == 0 && other.xs == 0 && self.ys.iter().zip(other.ys.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` for pure polynomial monomials.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut ys = other.ys;
        for (a, b) in ys.iter_mut().zip(self.ys.iter()) {
            *a -= b;
        }
        Some(Monomial { xs: 0, ys })
    }

    /// Moves pair `i` to pair `map[i]`. Returns the sign picked up by
    /// re-sorting the exterior generators.
    pub fn relabel(&self, map: &[usize]) -> (bool, Monomial) {
        let mut targets: Vec<usize> = self.xs().map(|i| map[i]).collect();
        let mut inversions = 0usize;
        for a in 0..targets.len() {
            for b in a + 1..targets.len() {
                if targets[a] > targets[b] {
                    inversions += 1;
                }
            }
        }
        targets.sort_unstable();
        let mut xs = 0u16;
        for t in targets {
            xs |= 1 << t;
        }
        let mut ys = [0u32; MAX_PAIRS];
        for (i, &e) in self.ys.iter().enumerate() {
            if e != 0 {
                ys[map[i]] += e;
            }
        }
        (inversions % 2 == 1, Monomial { xs, ys })
    }

    /// Splits into the part on pairs `< n` and the part on pairs `>= n`.
    /// The product `low * high` reproduces `self` with no sign, because every
    /// exterior generator of `low` already precedes those of `high`.
    pub fn split_at(&self, n: usize) -> (Monomial, Monomial) {
        let low_mask = ((1u32 << n) - 1) as u16;
        let mut low = Monomial { xs: self.xs & low_mask, ys: [0; MAX_PAIRS] };
        let mut high = Monomial { xs: self.xs & !low_mask, ys: [0; MAX_PAIRS] };
        low.ys[..n].copy_from_slice(&self.ys[..n]);
        high.ys[n..].copy_from_slice(&self.ys[n..]);
        (low, high)
    }
}

impl Monomial {
    /// Moves every pair up by `n` (pair `i` becomes `i + n`). Order of the
    /// exterior generators is preserved, so there is no sign.
    pub fn shift_up(&self, n: usize) -> Result<Monomial> {
        if let Some(top) = self.max_index() {
            if top + n >= MAX_PAIRS {
                return Err(AlgebraError::TooManyPairs(top + n + 1));
            }
        }
        let mut ys = [0u32; MAX_PAIRS];
        ys[n..].copy_from_slice(&self.ys[..MAX_PAIRS - n]);
        Ok(Monomial { xs: self.xs << n, ys })
    }

    /// Inverse of [`Monomial::shift_up`]; pairs below `n` are dropped.
    pub fn shift_down(&self, n: usize) -> Monomial {
        let mut ys = [0u32; MAX_PAIRS];
        ys[..MAX_PAIRS - n].copy_from_slice(&self.ys[n..]);
        Monomial { xs: self.xs >> n, ys }
    }
}

fn compare_exterior(a: u16, b: u16) -> Ordering {
    // compare the sorted index lists lexicographically
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (ia, ib) = (a.trailing_zeros(), b.trailing_zeros());
        if ia != ib {
            return ia.cmp(&ib);
        }
        a &= a - 1;
        b &= b - 1;
    }
}

impl Ord for Monomial {
    /// Graded order: total degree, then the exterior index list, then the
    /// exponent vector read from the highest pair down.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| compare_exterior(self.xs, other.xs))
            .then_with(|| {
                for i in (0..MAX_PAIRS).rev() {
                    match self.ys[i].cmp(&other.ys[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
