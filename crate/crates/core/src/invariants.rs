//! The Dickson and Mui invariants.
//!
//! Every family is built from the determinants
//! `[e_1..e_k] = det(y_i^{p^{e_j}})` and `[1; e_2..e_k]` (first row
//! `x_1..x_k`), exactly as defined, with `Q` and `V` obtained by exact
//! division. `v_product` and `q_recursion` are independent constructions used
//! to cross-check those divisions.
//!
//! A [`Frame`] fixes which generator pairs of a context play the role of
//! `(x_1, y_1), (x_2, y_2), ...`, so the same invariant can be formed on a
//! block of pairs inside a larger context.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::element::{determinant, AlgebraContext, Element};
use crate::error::{AlgebraError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum InvariantId {
    /// `[e_1, ..., e_k]`.
    BracketE(Vec<u32>),
    /// `[1; e_2, ..., e_k]`, storing the tail `e_2..e_k`.
    BracketX(Vec<u32>),
    Lks { k: u32, s: u32 },
    L { k: u32 },
    Mks { k: u32, s: u32 },
    Ltilde { n: u32 },
    Q { n: u32, s: u32 },
    /// `s = -1` is the convention `Mtilde_{n,-1} = Ltilde_n`.
    Mtilde { n: u32, s: i32 },
    U { k: u32 },
    V { k: u32 },
}

fn pw(p: u32, e: u32) -> u64 {
    (p as u64).pow(e)
}

impl InvariantId {
    /// Number of generator pairs the invariant lives on.
    pub fn pairs(&self) -> usize {
        match self {
            InvariantId::BracketE(es) => es.len(),
            InvariantId::BracketX(tail) => tail.len() + 1,
            InvariantId::Lks { k, .. } | InvariantId::L { k } | InvariantId::Mks { k, .. } => *k as usize,
            InvariantId::U { k } | InvariantId::V { k } => *k as usize,
            InvariantId::Ltilde { n } | InvariantId::Q { n, .. } | InvariantId::Mtilde { n, .. } => *n as usize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(AlgebraError::OutOfRange(msg));
        match *self {
            InvariantId::Lks { k, s } if s > k => bad(format!("L_{{{k},{s}}} needs s <= k")),
            InvariantId::Mks { k, s } if s >= k => bad(format!("M_{{{k},{s}}} needs s < k")),
            InvariantId::Q { n, s } if s > n => bad(format!("Q_{{{n},{s}}} needs s <= n")),
            InvariantId::Mtilde { n, s } if s < -1 || s >= n as i32 => {
                bad(format!("Mtilde_{{{n},{s}}} needs -1 <= s < n"))
            }
            InvariantId::U { k } | InvariantId::V { k } if k == 0 => bad("U_k and V_k need k >= 1".into()),
            InvariantId::Ltilde { n: 0 } => bad("Ltilde_n needs n >= 1".into()),
            InvariantId::BracketX(_) | InvariantId::BracketE(_) | InvariantId::L { .. } => Ok(()),
            _ => Ok(()),
        }
    }

    /// Topological degree, from the closed-form dimension of each family.
    pub fn degree(&self, p: u32) -> u64 {
        match *self {
            InvariantId::BracketE(ref es) => es.iter().map(|&e| 2 * pw(p, e)).sum(),
            InvariantId::BracketX(ref tail) => 1 + tail.iter().map(|&e| 2 * pw(p, e)).sum::<u64>(),
            InvariantId::Lks { k, s } => 2 * ((0..=k).map(|i| pw(p, i)).sum::<u64>() - pw(p, s)),
            InvariantId::L { k } => 2 * (0..k).map(|i| pw(p, i)).sum::<u64>(),
            InvariantId::Mks { k, s } => 1 + 2 * ((0..k).map(|i| pw(p, i)).sum::<u64>() - pw(p, s)),
            InvariantId::Ltilde { n } => pw(p, n) - 1,
            InvariantId::Q { n, s } => 2 * (pw(p, n) - pw(p, s)),
            InvariantId::Mtilde { n, s } if s < 0 => pw(p, n) - 1,
            InvariantId::Mtilde { n, s } => pw(p, n) - 2 * pw(p, s as u32),
            InvariantId::U { k } => pw(p, k - 1),
            InvariantId::V { k } => 2 * pw(p, k - 1),
        }
    }

    /// Notation used in LaTeX output.
    pub fn latex(&self) -> String {
        let seq = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            InvariantId::BracketE(es) => format!("[{}]", seq(es)),
            InvariantId::BracketX(t) => format!("[1;{}]", seq(t)),
            InvariantId::Lks { k, s } => format!("L_{{{k},{s}}}"),
            InvariantId::L { k } => format!("L_{{{k}}}"),
            InvariantId::Mks { k, s } => format!("M_{{{k},{s}}}"),
            InvariantId::Ltilde { n } => format!("\\tilde L_{{{n}}}"),
            InvariantId::Q { n, s } => format!("Q_{{{n},{s}}}"),
            InvariantId::Mtilde { n, s } => format!("\\tilde M_{{{n},{s}}}"),
            InvariantId::U { k } => format!("U_{{{k}}}"),
            InvariantId::V { k } => format!("V_{{{k}}}"),
        }
    }
}

impl fmt::Display for InvariantId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seq = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        match self {
            InvariantId::BracketE(es) => write!(f, "[{}]", seq(es)),
            InvariantId::BracketX(t) => write!(f, "[1;{}]", seq(t)),
            InvariantId::Lks { k, s } => write!(f, "L_{k},{s}"),
            InvariantId::L { k } => write!(f, "L_{k}"),
            InvariantId::Mks { k, s } => write!(f, "M_{k},{s}"),
            InvariantId::Ltilde { n } => write!(f, "Lt_{n}"),
            InvariantId::Q { n, s } => write!(f, "Q_{n},{s}"),
            InvariantId::Mtilde { n, s } => write!(f, "Mt_{n},{s}"),
            InvariantId::U { k } => write!(f, "U_{k}"),
            InvariantId::V { k } => write!(f, "V_{k}"),
        }
    }
}

type CacheKey = (AlgebraContext, Vec<usize>, InvariantId);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<Element>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<Element>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// An ordered choice of generator pairs inside a context.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    ctx: AlgebraContext,
    vars: Vec<usize>,
}

impl Frame {
    /// Pairs `0..m` in order.
    pub fn standard(ctx: AlgebraContext) -> Self {
        Frame { ctx: strip(ctx), vars: (0..ctx.m()).collect() }
    }

    pub fn new(ctx: AlgebraContext, vars: Vec<usize>) -> Result<Self> {
        if vars.iter().any(|&v| v >= ctx.m()) {
            return Err(AlgebraError::OutOfRange(format!("frame {vars:?} outside {} pairs", ctx.m())));
        }
        let mut sorted = vars.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(AlgebraError::OutOfRange(format!("frame {vars:?} repeats a pair")));
        }
        Ok(Frame { ctx: strip(ctx), vars })
    }

    pub fn ctx(&self) -> AlgebraContext {
        self.ctx
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    fn need(&self, k: usize) -> Result<()> {
        if k > self.vars.len() {
            Err(AlgebraError::OutOfRange(format!("needs {k} pairs, frame has {}", self.vars.len())))
        } else {
            Ok(())
        }
    }

    fn x(&self, i: usize) -> Element {
        Element::x(self.ctx, self.vars[i])
    }

    fn y_pow(&self, i: usize, e: u64) -> Element {
        Element::y_pow(self.ctx, self.vars[i], e as u32)
    }

    /// Memoized construction of any named invariant.
    pub fn get(&self, id: &InvariantId) -> Result<Element> {
        id.validate()?;
        let k = id.pairs();
        self.need(k)?;
        let key = (self.ctx, self.vars[..k].to_vec(), id.clone());
        if let Some(v) = cache().read().expect("cache poisoned").get(&key) {
            return Ok((**v).clone());
        }
        let value = self.build(id)?;
        cache().write().expect("cache poisoned").entry(key).or_insert_with(|| Arc::new(value.clone()));
        Ok(value)
    }

    fn build(&self, id: &InvariantId) -> Result<Element> {
        let p = self.ctx.p();
        let h = self.ctx.h() as u64;
        match *id {
            InvariantId::BracketE(ref es) => {
                if es.is_empty() {
                    return Ok(Element::one(self.ctx));
                }
                let rows: Vec<Vec<Element>> = es
                    .iter()
                    .map(|&e| (0..es.len()).map(|i| self.y_pow(i, pw(p, e))).collect())
                    .collect();
                determinant(&rows)
            }
            InvariantId::BracketX(ref tail) => {
                let k = tail.len() + 1;
                let mut rows = vec![(0..k).map(|i| self.x(i)).collect::<Vec<_>>()];
                rows.extend(tail.iter().map(|&e| (0..k).map(|i| self.y_pow(i, pw(p, e))).collect()));
                determinant(&rows)
            }
            InvariantId::Lks { k, s } => self.get(&InvariantId::BracketE((0..=k).filter(|&i| i != s).collect())),
            InvariantId::L { k } => self.get(&InvariantId::BracketE((0..k).collect())),
            InvariantId::Mks { k, s } => self.get(&InvariantId::BracketX((0..k).filter(|&i| i != s).collect())),
            InvariantId::Ltilde { n } => self.get(&InvariantId::L { k: n })?.pow(h),
            InvariantId::Q { n, s } => {
                let num = self.get(&InvariantId::Lks { k: n, s })?;
                num.exact_div(&self.get(&InvariantId::L { k: n })?)
            }
            InvariantId::Mtilde { n, s } => {
                if s < 0 {
                    return self.get(&InvariantId::Ltilde { n });
                }
                let m = self.get(&InvariantId::Mks { k: n, s: s as u32 })?;
                Ok(m * self.get(&InvariantId::L { k: n })?.pow(h - 1)?)
            }
            InvariantId::U { k } => {
                let m = self.get(&InvariantId::Mks { k, s: k - 1 })?;
                Ok(m * self.get(&InvariantId::L { k: k - 1 })?.pow(h - 1)?)
            }
            InvariantId::V { k } => {
                let num = self.get(&InvariantId::L { k })?;
                num.exact_div(&self.get(&InvariantId::L { k: k - 1 })?)
            }
        }
    }

    pub fn bracket_e(&self, es: &[u32]) -> Result<Element> {
        self.get(&InvariantId::BracketE(es.to_vec()))
    }

    pub fn bracket_x(&self, tail: &[u32]) -> Result<Element> {
        self.get(&InvariantId::BracketX(tail.to_vec()))
    }

    pub fn l_ks(&self, k: u32, s: u32) -> Result<Element> {
        self.get(&InvariantId::Lks { k, s })
    }

    pub fn l(&self, k: u32) -> Result<Element> {
        self.get(&InvariantId::L { k })
    }

    pub fn m_ks(&self, k: u32, s: u32) -> Result<Element> {
        self.get(&InvariantId::Mks { k, s })
    }

    pub fn ltilde(&self, n: u32) -> Result<Element> {
        self.get(&InvariantId::Ltilde { n })
    }

    pub fn q(&self, n: u32, s: u32) -> Result<Element> {
        self.get(&InvariantId::Q { n, s })
    }

    pub fn mtilde(&self, n: u32, s: i32) -> Result<Element> {
        self.get(&InvariantId::Mtilde { n, s })
    }

    pub fn u(&self, k: u32) -> Result<Element> {
        self.get(&InvariantId::U { k })
    }

    pub fn v(&self, k: u32) -> Result<Element> {
        self.get(&InvariantId::V { k })
    }

    /// `prod over lambda in F_p^{k-1} of (lambda_1 y_1 + ... + lambda_{k-1} y_{k-1} + y_k)`.
    pub fn v_product(&self, k: u32) -> Result<Element> {
        if k == 0 {
            return Err(AlgebraError::OutOfRange("V_k needs k >= 1".into()));
        }
        self.need(k as usize)?;
        let p = self.ctx.p();
        let last = self.y_pow(k as usize - 1, 1);
        // multiply in the factors one earlier variable at a time:
        // F_j = prod_{c in F_p} F_{j-1}(y_j -> shifted) is awkward; enumerate instead
        let count = (p as u64).pow(k - 1);
        let mut acc = Element::one(self.ctx);
        for idx in 0..count {
            let mut rest = idx;
            let mut factor = last.clone();
            for i in 0..(k as usize - 1) {
                let lambda = (rest % p as u64) as u32;
                rest /= p as u64;
                if lambda != 0 {
                    factor.add_scaled(lambda, &self.y_pow(i, 1))?;
                }
            }
            acc = acc * factor;
        }
        Ok(acc)
    }

    /// `Q_{n,s} = Q_{n-1,s-1}^p + Q_{n-1,s} V_n^{p-1}` with `Q_{0,0} = 1`,
    /// `Q_{n-1,-1} = 0`, `Q_{n-1,n} = 0`, and `V_n` from [`Frame::v_product`].
    pub fn q_recursion(&self, n: u32, s: u32) -> Result<Element> {
        if s > n {
            return Ok(Element::zero(self.ctx));
        }
        if n == 0 {
            return Ok(Element::one(self.ctx));
        }
        self.need(n as usize)?;
        let p = self.ctx.p() as u64;
        let first = if s == 0 { Element::zero(self.ctx) } else { self.q_recursion(n - 1, s - 1)?.pow(p)? };
        let second = if s > n - 1 {
            Element::zero(self.ctx)
        } else {
            self.q_recursion(n - 1, s)? * self.v_product(n)?.pow(p - 1)?
        };
        Ok(first + second)
    }
}

fn strip(ctx: AlgebraContext) -> AlgebraContext {
    AlgebraContext::new(ctx.p(), ctx.m()).expect("valid context")
}

fn det_mod(a: &[Vec<u32>], p: u32) -> u32 {
    let f = crate::field::PrimeField::new(p).expect("prime");
    let n = a.len();
    let mut m: Vec<Vec<u32>> = a.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect();
    let mut det = 1u32;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        let inv = f.inv(m[col][col]).expect("nonzero pivot");
        for r in col + 1..n {
            let factor = f.mul(m[r][col], inv);
            if factor == 0 {
                continue;
            }
            for c in col..n {
                let v = f.mul(factor, m[col][c]);
                m[r][c] = f.sub(m[r][c], v);
            }
        }
    }
    det
}

/// Applies `x_i -> sum_j A_ij x_j`, `y_i -> sum_j A_ij y_j` on the first
/// `k = A.len()` pairs (other pairs fixed) and compares with `a`.
pub fn is_invariant(a: &Element, matrix: &[Vec<u32>]) -> Result<bool> {
    Ok(act(a, matrix)? == *a)
}

/// The linear substitution used by [`is_invariant`].
pub fn act(a: &Element, matrix: &[Vec<u32>]) -> Result<Element> {
    let ctx = a.ctx();
    let k = matrix.len();
    if matrix.iter().any(|r| r.len() != k) {
        return Err(AlgebraError::NonSquare);
    }
    if k > ctx.m() {
        return Err(AlgebraError::OutOfRange(format!("{k}x{k} matrix on {} pairs", ctx.m())));
    }
    if det_mod(matrix, ctx.p()) == 0 {
        return Err(AlgebraError::Singular(ctx.p()));
    }
    let mut xs: Vec<Element> = (0..ctx.m()).map(|i| Element::x(ctx, i)).collect();
    let mut ys: Vec<Element> = (0..ctx.m()).map(|i| Element::y(ctx, i)).collect();
    for i in 0..k {
        let mut xi = Element::zero(ctx);
        let mut yi = Element::zero(ctx);
        for j in 0..k {
            xi.add_scaled(matrix[i][j], &Element::x(ctx, j))?;
            yi.add_scaled(matrix[i][j], &Element::y(ctx, j))?;
        }
        xs[i] = xi;
        ys[i] = yi;
    }
    a.substitute(ctx, &xs, &ys)
}

/// Determinant of a square matrix over Z/p.
pub fn matrix_det(matrix: &[Vec<u32>], p: u32) -> u32 {
    det_mod(matrix, p)
}

/// Elementary transvections `I + E_ij` (i != j) on `k` pairs.
pub fn transvections(k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i != j {
                let mut m = identity(k);
                m[i][j] = 1;
                out.push(m);
            }
        }
    }
    out
}

pub fn identity(k: usize) -> Vec<Vec<u32>> {
    (0..k).map(|i| (0..k).map(|j| u32::from(i == j)).collect()).collect()
}

/// A generator of the multiplicative group of Z/p.
pub fn primitive_root(p: u32) -> u32 {
    let f = crate::field::PrimeField::new(p).expect("prime");
    (2..p)
        .find(|&g| (1..p - 1).all(|e| f.pow(g, e as u64) != 1))
        .unwrap_or(1)
}

/// Transvections plus `diag(g, 1, ..., 1)`: a generating set of GL_k(F_p).
pub fn gl_generators(k: usize, p: u32) -> Vec<Vec<Vec<u32>>> {
    let mut gens = transvections(k);
    let mut d = identity(k);
    if k > 0 {
        d[0][0] = primitive_root(p);
    }
    gens.push(d);
    gens
}

/// Every invertible `k x k` matrix over Z/p (use only for tiny k, p).
pub fn all_invertible(k: usize, p: u32) -> Vec<Vec<Vec<u32>>> {
    let cells = k * k;
    let total = (p as u64).pow(cells as u32);
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let m: Vec<Vec<u32>> = (0..k)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let v = (rest % p as u64) as u32;
                        rest /= p as u64;
                        v
                    })
                    .collect()
            })
            .collect();
        if det_mod(&m, p) != 0 {
            out.push(m);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::parse;

    fn frame(p: u32, m: usize) -> Frame {
        Frame::standard(AlgebraContext::new(p, m).unwrap())
    }

    fn el(text: &str, p: u32, m: usize) -> Element {
        parse(text, p, Some(m)).unwrap()
    }

    #[test]
    fn brackets() {
        let f = frame(3, 2);
        assert_eq!(f.bracket_e(&[0]).unwrap(), el("y1", 3, 2));
        assert_eq!(f.bracket_e(&[0, 1]).unwrap(), el("y1*y2^3 - y2*y1^3", 3, 2));
        assert!(f.bracket_e(&[0, 0]).unwrap().is_zero());
        assert_eq!(f.bracket_x(&[]).unwrap(), el("x1", 3, 2));
        assert_eq!(f.bracket_x(&[0]).unwrap(), el("x1*y2 - x2*y1", 3, 2));
        assert_eq!(f.bracket_x(&[1]).unwrap(), el("x1*y2^3 - x2*y1^3", 3, 2));
        assert!(f.bracket_e(&[0, 1, 2]).is_err());
    }

    #[test]
    fn named_small_cases() {
        for p in [3u32, 5, 7] {
            let f = frame(p, 2);
            let pm1 = p - 1;
            assert_eq!(f.l(1).unwrap(), el("y1", p, 2));
            assert_eq!(f.l(0).unwrap(), Element::one(f.ctx()));
            assert_eq!(f.l_ks(1, 0).unwrap(), el(&format!("y1^{p}"), p, 2));
            assert_eq!(f.m_ks(1, 0).unwrap(), el("x1", p, 2));
            assert_eq!(f.q(1, 0).unwrap(), el(&format!("y1^{pm1}"), p, 2));
            assert_eq!(f.v(2).unwrap(), el(&format!("y2^{p} - y2*y1^{pm1}"), p, 2));
            assert_eq!(f.q(2, 2).unwrap(), Element::one(f.ctx()));
        }
        assert!(frame(3, 2).m_ks(1, 1).is_err());
        assert!(frame(3, 2).q(1, 2).is_err());
        assert!(frame(3, 2).mtilde(2, -2).is_err());
        assert_eq!(frame(3, 2).mtilde(2, -1).unwrap(), frame(3, 2).ltilde(2).unwrap());
    }

    #[test]
    fn v_product_small() {
        let f = frame(3, 2);
        assert_eq!(f.v_product(1).unwrap(), el("y1", 3, 2));
        assert_eq!(f.v_product(2).unwrap(), el("y2^3 - y2*y1^2", 3, 2));
        let f5 = frame(5, 2);
        assert_eq!(f5.v_product(2).unwrap(), f5.v(2).unwrap());
    }

    #[test]
    fn q_recursion_small() {
        let f = frame(3, 2);
        assert_eq!(f.q_recursion(1, 0).unwrap(), el("y1^2", 3, 2));
        let expected = el("y1^6", 3, 2) + el("y2^3 - y2*y1^2", 3, 2).pow(2).unwrap();
        assert_eq!(f.q_recursion(2, 1).unwrap(), expected);
        assert_eq!(f.q(2, 1).unwrap(), expected);
        assert_eq!(f.q_recursion(2, 2).unwrap(), Element::one(f.ctx()));
    }

    #[test]
    fn dimension_bookkeeping() {
        for p in [3u32, 5] {
            let f = frame(p, 3);
            for n in 1..=3u32 {
                if p == 5 && n == 3 {
                    continue;
                }
                let ids = std::iter::once(InvariantId::Ltilde { n })
                    .chain((0..=n).map(|s| InvariantId::Q { n, s }))
                    .chain((-1..n as i32).map(|s| InvariantId::Mtilde { n, s }))
                    .chain([InvariantId::U { k: n }, InvariantId::V { k: n }]);
                for id in ids {
                    let e = f.get(&id).unwrap();
                    if !e.is_zero() {
                        assert_eq!(e.degree().map(u64::from), Some(id.degree(p)), "{id} at p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn gl2_f3_exhaustive() {
        let f = frame(3, 2);
        let q21 = f.q(2, 1).unwrap();
        let lt2 = f.ltilde(2).unwrap();
        let all = all_invertible(2, 3);
        assert_eq!(all.len(), 48);
        for a in &all {
            assert!(is_invariant(&q21, a).unwrap());
            let d = matrix_det(a, 3);
            // L_2 picks up det(A), so Ltilde_2 picks up det(A)^h
            let scaled = lt2.scalar_mul(crate::field::PrimeField::new(3).unwrap().pow(d, 1));
            assert_eq!(act(&lt2, a).unwrap(), scaled);
            assert_eq!(is_invariant(&lt2, a).unwrap(), d == 1);
        }
        assert!(is_invariant(&q21, &identity(2)).unwrap());
        assert_eq!(is_invariant(&q21, &[vec![1, 1], vec![1, 1]]), Err(AlgebraError::Singular(3)));
    }
}
