//! Sparse elements of E(x_1..x_m) (x) P(y_1..y_m) over Z/p.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MAX_PAIRS};

/// The prime, the number of generator pairs, and optionally the size of a
/// leading "invariant-side" block of pairs (the rest are "X-side").
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraContext {
    field: PrimeField,
    m: usize,
    split: Option<usize>,
}

impl AlgebraContext {
    pub fn new(p: u32, m: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        if m > MAX_PAIRS {
            return Err(AlgebraError::TooManyPairs(m));
        }
        Ok(AlgebraContext { field, m, split: None })
    }

    pub fn with_split(self, n: usize) -> Result<Self> {
        if n > self.m {
            return Err(AlgebraError::OutOfRange(format!("block of {n} pairs in a context of {}", self.m)));
        }
        Ok(AlgebraContext { split: Some(n), ..self })
    }

    /// Same prime, different number of pairs, no split.
    pub fn resized(&self, m: usize) -> Result<Self> {
        AlgebraContext::new(self.p(), m)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn h(&self) -> u32 {
        self.field.half()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn split(&self) -> Option<usize> {
        self.split
    }

    /// Size of the X-side block when a split is present.
    pub fn x_side(&self) -> Option<usize> {
        self.split.map(|n| self.m - n)
    }

    /// Elements can be combined iff prime and pair count agree.
    #[inline]
    pub fn compatible(&self, other: &AlgebraContext) -> bool {
        self.field == other.field && self.m == other.m
    }

    fn check(&self, other: &AlgebraContext) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch(self.p(), self.m, other.p(), other.m))
        }
    }
}

/// A finite Z/p-linear combination of monomials in canonical form: no zero
/// coefficients are ever stored.
#[derive(Clone, Debug)]
pub struct Element {
    ctx: AlgebraContext,
    terms: BTreeMap<Monomial, u32>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Hash for Element {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.p().hash(state);
        self.ctx.m().hash(state);
        self.terms.hash(state);
    }
}

impl Element {
    pub fn zero(ctx: AlgebraContext) -> Self {
        Element { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: AlgebraContext) -> Self {
        Self::monomial(ctx, 1, Monomial::ONE)
    }

    pub fn constant(ctx: AlgebraContext, c: i64) -> Self {
        Self::monomial(ctx, ctx.field().reduce(c), Monomial::ONE)
    }

    pub fn monomial(ctx: AlgebraContext, c: u32, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        let c = c % ctx.p();
        if c != 0 {
            terms.insert(m, c);
        }
        Element { ctx, terms }
    }

    /// The exterior generator `x_{i+1}`.
    pub fn x(ctx: AlgebraContext, i: usize) -> Self {
        assert!(i < ctx.m, "x index {i} outside a context of {} pairs", ctx.m);
        Self::monomial(ctx, 1, Monomial::x(i))
    }

    /// The polynomial generator `y_{i+1}`.
    pub fn y(ctx: AlgebraContext, i: usize) -> Self {
        Self::y_pow(ctx, i, 1)
    }

    pub fn y_pow(ctx: AlgebraContext, i: usize, e: u32) -> Self {
        assert!(i < ctx.m, "y index {i} outside a context of {} pairs", ctx.m);
        Self::monomial(ctx, 1, Monomial::y(i, e))
    }

    /// Builds an element from `(coefficient, monomial)` pairs, summing
    /// duplicates.
    pub fn from_terms<I>(ctx: AlgebraContext, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Monomial)>,
    {
        let f = ctx.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (c, m) in terms {
            if let Some(top) = m.max_index() {
                if top >= ctx.m {
                    return Err(AlgebraError::OutOfRange(format!("generator index {} > m = {}", top + 1, ctx.m)));
                }
            }
            let e = acc.entry(m).or_insert(0);
            *e = f.add(*e, f.reduce(c));
        }
        Ok(Self::from_map(ctx, acc))
    }

    fn from_map(ctx: AlgebraContext, acc: HashMap<Monomial, u32>) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Element { ctx, terms }
    }

    #[inline]
    pub fn ctx(&self) -> AlgebraContext {
        self.ctx
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    /// Stored coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn degree_set(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::degree).collect()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous
    /// elements.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn is_pure_polynomial(&self) -> bool {
        self.terms.keys().all(Monomial::is_pure_polynomial)
    }

    /// Highest pair index used by any term.
    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().filter_map(Monomial::max_index).max()
    }

    /// The homogeneous component of degree `d`.
    pub fn component(&self, d: u32) -> Element {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, *c)).collect();
        Element { ctx: self.ctx, terms }
    }

    /// Same terms, re-tagged with a compatible context (e.g. to add a split).
    pub fn with_ctx(mut self, ctx: AlgebraContext) -> Result<Self> {
        self.ctx.check(&ctx)?;
        self.ctx = ctx;
        Ok(self)
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.ctx.check(&other.ctx)?;
        let f = self.ctx.field();
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&f, &mut terms, *m, *c);
        }
        Ok(Element { ctx: self.ctx, terms })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scalar_mul(self.p() - 1)
    }

    pub fn scalar_mul(&self, c: u32) -> Element {
        let f = self.ctx.field();
        let c = c % f.p();
        if c == 0 {
            return Element::zero(self.ctx);
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, f.mul(*v, c))).collect();
        Element { ctx: self.ctx, terms }
    }

    /// Adds `c * other` in place.
    pub fn add_scaled(&mut self, c: u32, other: &Element) -> Result<()> {
        self.ctx.check(&other.ctx)?;
        let f = self.ctx.field();
        let c = c % f.p();
        if c == 0 {
            return Ok(());
        }
        for (m, v) in &other.terms {
            add_term(&f, &mut self.terms, *m, f.mul(*v, c));
        }
        Ok(())
    }

    /// Adds `c * m` in place.
    pub fn add_monomial(&mut self, c: u32, m: Monomial) {
        let f = self.ctx.field();
        add_term(&f, &mut self.terms, m, c % f.p());
    }

    /// Graded-commutative product.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        self.ctx.check(&other.ctx)?;
        let f = self.ctx.field();
        let p = f.p() as u64;
        if self.is_zero() || other.is_zero() {
            return Ok(Element::zero(self.ctx));
        }
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, prod)) = ma.mul(mb) {
                    let v = *ca as u64 * *cb as u64 % p;
                    let v = if neg { (p - v) % p } else { v };
                    *acc.entry(prod).or_insert(0) += v;
                }
            }
        }
        let terms = acc
            .into_iter()
            .filter_map(|(m, c)| {
                let c = (c % p) as u32;
                (c != 0).then_some((m, c))
            })
            .collect();
        Ok(Element { ctx: self.ctx, terms })
    }

    /// `self^e`. Elements carrying exterior factors only accept `e <= 1`.
    /// Pure polynomials use the Frobenius `(sum c m)^p = sum c m^p` on each
    /// p-adic digit of the exponent.
    pub fn pow(&self, e: u64) -> Result<Element> {
        if e == 0 {
            return Ok(Element::one(self.ctx));
        }
        if e == 1 {
            return Ok(self.clone());
        }
        if !self.is_pure_polynomial() {
            return Err(AlgebraError::ExteriorPower(e));
        }
        let p = self.p() as u64;
        let mut result = Element::one(self.ctx);
        let mut frob = self.clone();
        let mut rest = e;
        loop {
            let digit = rest % p;
            if digit > 0 {
                result = result.try_mul(&frob.pow_small(digit)?)?;
            }
            rest /= p;
            if rest == 0 {
                break;
            }
            frob = frob.frobenius();
        }
        Ok(result)
    }

    fn pow_small(&self, e: u64) -> Result<Element> {
        let mut result = Element::one(self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// `self^p` for a pure polynomial.
    fn frobenius(&self) -> Element {
        let p = self.p();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut ys = *m.ys();
                ys.iter_mut().for_each(|e| *e *= p);
                (Monomial::from_raw(0, ys), *c)
            })
            .collect();
        Element { ctx: self.ctx, terms }
    }

    /// Exact quotient in P(y_1..y_m), by leading-term division.
    pub fn exact_div(&self, divisor: &Element) -> Result<Element> {
        self.ctx.check(&divisor.ctx)?;
        if !self.is_pure_polynomial() || !divisor.is_pure_polynomial() {
            return Err(AlgebraError::ExteriorContent);
        }
        let (lead_m, lead_c) = match divisor.leading() {
            Some((m, c)) => (*m, c),
            None => return Err(AlgebraError::DivisionByZero),
        };
        let f = self.ctx.field();
        let lead_inv = f.inv(lead_c).expect("nonzero coefficient");
        let mut rem = self.terms.clone();
        let mut quotient = Element::zero(self.ctx);
        while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (*m, *c)) {
            let q = lead_m.quotient_of(&m).ok_or(AlgebraError::InexactDivision)?;
            let qc = f.mul(c, lead_inv);
            quotient.terms.insert(q, qc);
            let neg_qc = f.neg(qc);
            for (dm, dc) in &divisor.terms {
                let (_, prod) = q.mul(dm).expect("pure polynomial");
                add_term(&f, &mut rem, prod, f.mul(neg_qc, *dc));
            }
        }
        Ok(quotient)
    }

    /// Moves pair `i` to pair `map[i]` of `target`, with Koszul signs.
    pub fn relabel(&self, target: AlgebraContext, map: &[usize]) -> Result<Element> {
        if target.p() != self.p() {
            return Err(AlgebraError::ContextMismatch(self.p(), self.ctx.m, target.p(), target.m));
        }
        if map.len() < self.ctx.m || map.iter().take(self.ctx.m).any(|&t| t >= target.m) {
            return Err(AlgebraError::OutOfRange("relabel map does not fit the target context".into()));
        }
        let f = self.ctx.field();
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let (neg, r) = m.relabel(map);
            add_term(&f, &mut out.terms, r, if neg { f.neg(*c) } else { *c });
        }
        Ok(out)
    }

    /// Ring homomorphism determined by generator images in `target`. Each
    /// monomial is mapped factor by factor in canonical order.
    pub fn substitute(&self, target: AlgebraContext, x_images: &[Element], y_images: &[Element]) -> Result<Element> {
        let m = self.ctx.m;
        if x_images.len() < m || y_images.len() < m {
            return Err(AlgebraError::OutOfRange("substitution needs an image for every generator".into()));
        }
        for (i, img) in x_images.iter().enumerate().take(m) {
            target.check(&img.ctx)?;
            if img.terms.keys().any(|t| t.degree() % 2 == 0) {
                return Err(AlgebraError::ParityViolation(format!("x{}", i + 1)));
            }
        }
        for (i, img) in y_images.iter().enumerate().take(m) {
            target.check(&img.ctx)?;
            if img.terms.keys().any(|t| t.degree() % 2 == 1) {
                return Err(AlgebraError::ParityViolation(format!("y{}", i + 1)));
            }
        }
        let mut powers: HashMap<(usize, u32), Element> = HashMap::new();
        let mut out = Element::zero(target);
        for (mono, c) in &self.terms {
            let mut term = Element::constant(target, *c as i64);
            for i in mono.xs() {
                term = term.try_mul(&x_images[i])?;
            }
            for (i, &e) in mono.ys().iter().enumerate().take(m) {
                if e == 0 {
                    continue;
                }
                let pw = match powers.get(&(i, e)) {
                    Some(v) => v.clone(),
                    None => {
                        let v = y_images[i].pow(e as u64)?;
                        powers.insert((i, e), v.clone());
                        v
                    }
                };
                term = term.try_mul(&pw)?;
            }
            out.add_scaled(1, &term)?;
        }
        Ok(out)
    }

    /// Linear extension of a per-monomial map: `sum c * f(m)`.
    pub fn map_terms<F>(&self, target: AlgebraContext, mut f: F) -> Result<Element>
    where
        F: FnMut(&Monomial) -> Result<Element>,
    {
        let mut out = Element::zero(target);
        for (m, c) in &self.terms {
            let img = f(m)?;
            out.add_scaled(*c, &img)?;
        }
        Ok(out)
    }
}

#[inline]
fn add_term(f: &PrimeField, terms: &mut BTreeMap<Monomial, u32>, m: Monomial, c: u32) {
    if c == 0 {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = f.add(*o.get(), c);
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Determinant by Laplace expansion along the first row, i.e. the
/// row-ordered Leibniz sum `sum sgn(s) a_{0 s(0)} a_{1 s(1)} ...`. With at
/// most one odd row placed first this is the usual determinant.
pub fn determinant(rows: &[Vec<Element>]) -> Result<Element> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::NonSquare);
    }
    if n == 0 {
        return Err(AlgebraError::NonSquare);
    }
    let ctx = rows[0][0].ctx();
    for r in rows {
        for e in r {
            ctx.check(&e.ctx())?;
        }
    }
    let mut memo: HashMap<u32, Element> = HashMap::new();
    minor(rows, 0, (1u32 << n) - 1, &mut memo)
}

fn minor(rows: &[Vec<Element>], row: usize, cols: u32, memo: &mut HashMap<u32, Element>) -> Result<Element> {
    if cols == 0 {
        return Ok(Element::one(rows[0][0].ctx()));
    }
    if let Some(v) = memo.get(&cols) {
        return Ok(v.clone());
    }
    let ctx = rows[0][0].ctx();
    let mut acc = Element::zero(ctx);
    let mut position = 0u64;
    for j in 0..rows.len() {
        if cols >> j & 1 == 0 {
            continue;
        }
        let entry = &rows[row][j];
        if !entry.is_zero() {
            let sub = minor(rows, row + 1, cols & !(1 << j), memo)?;
            let term = entry.try_mul(&sub)?;
            acc.add_scaled(ctx.field().sign(position), &term)?;
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl $tr<&Element> for &Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                self.$call(rhs).expect("context mismatch")
            }
        }
        impl $tr<Element> for Element {
            type Output = Element;
            fn $method(self, rhs: Element) -> Element {
                (&self).$call(&rhs).expect("context mismatch")
            }
        }
        impl $tr<&Element> for Element {
            type Output = Element;
            fn $method(self, rhs: &Element) -> Element {
                (&self).$call(rhs).expect("context mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(self)
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element::neg(&self)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::render::to_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u32, m: usize) -> AlgebraContext {
        AlgebraContext::new(p, m).unwrap()
    }

    #[test]
    fn binomial_square() {
        let c = ctx(3, 2);
        let s = Element::y(c, 0) + Element::y(c, 1);
        let sq = s.pow(2).unwrap();
        let expected = Element::from_terms(
            c,
            [
                (1, Monomial::y(0, 2)),
                (2, Monomial::new(&[], &[1, 1]).unwrap()),
                (1, Monomial::y(1, 2)),
            ],
        )
        .unwrap();
        assert_eq!(sq, expected);
    }

    #[test]
    fn odd_elements_square_to_zero() {
        // (x1 y2)(x2 y1) = x1 x2 y1 y2 and (x2 y1)(x1 y2) = -x1 x2 y1 y2, so the
        // cross terms of (x1 y2 - x2 y1)^2 cancel
        let c = ctx(3, 2);
        let (x1y2, x2y1) = (Element::x(c, 0) * Element::y(c, 1), Element::x(c, 1) * Element::y(c, 0));
        let x1x2y1y2 = Element::monomial(c, 1, Monomial::new(&[0, 1], &[1, 1]).unwrap());
        assert_eq!(&x1y2 * &x2y1, x1x2y1y2);
        assert_eq!(&x2y1 * &x1y2, -&x1x2y1y2);
        let a = &x1y2 - &x2y1;
        assert!((&a * &a).is_zero());
        assert!(matches!(a.pow(2), Err(AlgebraError::ExteriorPower(2))));
    }

    #[test]
    fn identity_and_mismatch() {
        let c = ctx(5, 2);
        let a = Element::x(c, 0) + Element::y_pow(c, 1, 3);
        assert_eq!(&a * &Element::one(c), a);
        let other = Element::one(ctx(3, 2));
        assert!(a.try_mul(&other).is_err());
        assert!(a.try_add(&Element::one(ctx(5, 3))).is_err());
    }

    #[test]
    fn frobenius_power_matches_repeated_product() {
        let c = ctx(3, 2);
        let a = Element::y(c, 0) + Element::y_pow(c, 1, 2).scalar_mul(2) + Element::one(c);
        let mut slow = Element::one(c);
        for _ in 0..11 {
            slow = &slow * &a;
        }
        assert_eq!(a.pow(11).unwrap(), slow);
    }

    #[test]
    fn determinants() {
        let c = ctx(3, 2);
        let y1 = Element::y(c, 0);
        let y2 = Element::y(c, 1);
        let d = determinant(&[vec![y1.clone(), y2.clone()], vec![y1.pow(3).unwrap(), y2.pow(3).unwrap()]]).unwrap();
        assert_eq!(d, &y1 * &y2.pow(3).unwrap() - &y2 * &y1.pow(3).unwrap());
        let x1 = Element::x(c, 0);
        let x2 = Element::x(c, 1);
        let d = determinant(&[vec![x1.clone(), x2.clone()], vec![y1.clone(), y2.clone()]]).unwrap();
        assert_eq!(d, &x1 * &y2 - &x2 * &y1);
        assert_eq!(determinant(&[vec![y1.clone()]]).unwrap(), y1);
        assert_eq!(determinant(&[vec![y1.clone(), y2.clone()]]), Err(AlgebraError::NonSquare));
        let dup = determinant(&[vec![y1.clone(), y2.clone()], vec![y1.clone(), y2.clone()]]).unwrap();
        assert!(dup.is_zero());
    }

    #[test]
    fn exact_division() {
        let c = ctx(3, 2);
        let y1 = Element::y(c, 0);
        let y2 = Element::y(c, 1);
        let l2 = &y1 * &y2.pow(3).unwrap() - &y2 * &y1.pow(3).unwrap();
        let v2 = l2.exact_div(&y1).unwrap();
        assert_eq!(v2, y2.pow(3).unwrap() - &y2 * &y1.pow(2).unwrap());
        assert_eq!(l2.exact_div(&Element::one(c)).unwrap(), l2);
        assert_eq!(y1.pow(2).unwrap().exact_div(&y2), Err(AlgebraError::InexactDivision));
        assert_eq!(y1.exact_div(&Element::zero(c)), Err(AlgebraError::DivisionByZero));
        assert_eq!(Element::x(c, 0).exact_div(&y1), Err(AlgebraError::ExteriorContent));
    }

    #[test]
    fn substitution() {
        let c = ctx(3, 2);
        let (x1, x2, y1, y2) = (Element::x(c, 0), Element::x(c, 1), Element::y(c, 0), Element::y(c, 1));
        let m21 = &x1 * &y2 - &x2 * &y1;
        let same = m21.substitute(c, &[x1.clone(), x2.clone()], &[y1.clone(), y2.clone()]).unwrap();
        assert_eq!(same, m21);
        let swapped = m21.substitute(c, &[x2.clone(), x1.clone()], &[y2.clone(), y1.clone()]).unwrap();
        assert_eq!(swapped, -&m21);
        let v2 = y2.pow(3).unwrap() - &y2 * &y1.pow(2).unwrap();
        let shear = v2.substitute(c, &[x1.clone(), x2.clone()], &[&y1 + &y2, y2.clone()]).unwrap();
        assert_eq!(shear, y2.pow(3).unwrap() - &y2 * &(&y1 + &y2).pow(2).unwrap());
        assert!(matches!(
            m21.substitute(c, &[y1.clone(), x2.clone()], &[y1.clone(), y2.clone()]),
            Err(AlgebraError::ParityViolation(_))
        ));
    }

    #[test]
    fn coefficients_and_degrees() {
        let c = ctx(3, 2);
        let a = Element::y(c, 0) + Element::y(c, 1).scalar_mul(2);
        assert_eq!(a.coefficient(&Monomial::y(1, 1)), 2);
        assert_eq!(Element::zero(c).coefficient(&Monomial::y(1, 1)), 0);
        let m = Element::x(c, 0) * Element::y(c, 1) - Element::x(c, 1) * Element::y(c, 0);
        assert_eq!(m.degree_set().into_iter().collect::<Vec<_>>(), vec![3]);
    }
}
