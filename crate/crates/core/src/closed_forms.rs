//! Closed formulas for `P^r` on `U_{k+1}`, `Mt_{n,s}`, `V_{k+1}`, `Q_{n,s}`,
//! for `St^{S,R}` on `x^e y^b`, `U_2` and `V_2`, and the two bracket
//! identities in two pairs.
//!
//! Throughout, `alpha_i` is the i-th base-p digit of `r` (zero for `i < 0`).
//! Negative exponents that appear in the formulas are always
//! combined with a matching positive factor before anything is built.

use serde::Serialize;

use crate::combinatorics::{multinomial, p_adic_digits, PAdicDigits};
use crate::element::{AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::field::PrimeField;
use crate::invariants::{Frame, InvariantId};
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedFormResult {
    #[serde(skip)]
    pub value: Element,
    /// Whether a nonzero branch of the formula applied.
    pub applicable: bool,
    pub branch: String,
    /// The value written in the invariants, in LaTeX notation.
    pub symbolic: String,
}

impl ClosedFormResult {
    fn zero(ctx: AlgebraContext, branch: impl Into<String>) -> Self {
        ClosedFormResult { value: Element::zero(ctx), applicable: false, branch: branch.into(), symbolic: "0".into() }
    }

    fn hit(value: Element, branch: impl Into<String>, symbolic: Symbolic) -> Self {
        ClosedFormResult { value, applicable: true, branch: branch.into(), symbolic: symbolic.render() }
    }
}

/// A sum of coefficient times product-of-powers terms, for display.
#[derive(Default)]
struct Symbolic(Vec<(u32, Vec<(InvariantId, i64)>)>);

impl Symbolic {
    fn term(mut self, coef: u32, factors: Vec<(InvariantId, i64)>) -> Self {
        if coef != 0 {
            self.0.push((coef, factors.into_iter().filter(|f| f.1 != 0).collect()));
        }
        self
    }

    fn render(&self) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        let power = |(id, e): &(InvariantId, i64)| match e {
            1 => id.latex(),
            e if *e < 10 => format!("{}^{e}", id.latex()),
            e => format!("{}^{{{e}}}", id.latex()),
        };
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(c, fs)| {
                let body = fs.iter().map(power).collect::<Vec<_>>().join(" ");
                match (c, body.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => body,
                    _ => format!("{c} {body}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

/// `Q_{n,0}^{e_0} ... Q_{n,n-1}^{e_{n-1}}` as display factors.
fn q_factors(n: u32, exps: &[i64]) -> Vec<(InvariantId, i64)> {
    exps.iter().enumerate().map(|(i, &e)| (InvariantId::Q { n, s: i as u32 }, e)).collect()
}

/// `a / b` in Z/p, refusing a zero denominator.
fn ratio(f: &PrimeField, a: u32, b: u32, what: &str) -> Result<u32> {
    let inv = f.inv(b).ok_or_else(|| AlgebraError::NonInvertible(what.to_string()))?;
    Ok(f.mul(a, inv))
}

/// Factorial of a small non-negative integer as a residue.
fn fact(f: &PrimeField, n: i64) -> u32 {
    debug_assert!(n >= 0);
    f.factorial(n as u64)
}

/// `t_i = alpha_i - alpha_{i-1}` for `0 <= i < len`.
fn steps(d: &PAdicDigits, len: u32) -> Vec<i64> {
    (0..len as i64).map(|i| d.get(i) as i64 - d.get(i - 1) as i64).collect()
}

/// `prod_i base(i)^{e_i}`, all exponents non-negative.
fn q_product(frame: &Frame, n: u32, exps: &[i64]) -> Result<Element> {
    let mut out = Element::one(frame.ctx());
    for (i, &e) in exps.iter().enumerate() {
        debug_assert!(e >= 0, "negative exponent survived combination");
        if e > 0 {
            out = out * frame.q(n, i as u32)?.pow(e as u64)?;
        }
    }
    Ok(out)
}

/// `P^r U_{k+1}`.
pub fn power_on_u(ctx: AlgebraContext, r: u64, k: u32) -> Result<ClosedFormResult> {
    let p = ctx.p() as u64;
    let f = ctx.field();
    let h = ctx.h() as i64;
    let frame = Frame::standard(ctx);
    if 2 * r >= p.pow(k) {
        return Ok(ClosedFormResult::zero(ctx, "2r > p^k"));
    }
    let d = p_adic_digits(r, ctx.p());
    let t = steps(&d, k);
    if t.iter().any(|&x| x < 0) {
        return Ok(ClosedFormResult::zero(ctx, "some t_i < 0"));
    }
    let top = if k == 0 { 0 } else { d.get(k as i64 - 1) as i64 };
    let mut den = fact(&f, h - top);
    for &ti in &t {
        den = f.mul(den, fact(&f, ti));
    }
    let c = ratio(&f, fact(&f, h - 1), den, "coefficient of P^r U")?;
    let mut sum = frame.u(k + 1)?.scalar_mul(f.reduce(h)) * q_product(&frame, k, &t)?;
    let mut sym = Symbolic::default().term(
        f.mul(c, f.reduce(h)),
        [vec![(InvariantId::U { k: k + 1 }, 1)], q_factors(k, &t)].concat(),
    );
    let v = frame.v(k + 1)?;
    for u in 0..k as usize {
        if t[u] == 0 {
            continue;
        }
        let mut exps = t.clone();
        exps[u] -= 1;
        let term = v.clone() * frame.mtilde(k, u as i32)? * q_product(&frame, k, &exps)?;
        sum = sum + term.scalar_mul(f.reduce(t[u]));
        sym = sym.term(
            f.mul(c, f.reduce(t[u])),
            [vec![(InvariantId::V { k: k + 1 }, 1), (InvariantId::Mtilde { n: k, s: u as i32 }, 1)], q_factors(k, &exps)].concat(),
        );
    }
    Ok(ClosedFormResult::hit(sum.scalar_mul(c), "2r < p^k, all t_i >= 0", sym))
}

/// `[-2p^s]`: `-2p^s` for `s >= 0` and `-1` for `s = -1`.
pub fn bracket_neg(p: u32, s: i32) -> i64 {
    if s < 0 {
        -1
    } else {
        -2 * (p as i64).pow(s as u32)
    }
}

/// Which form of a formula to evaluate: the short form, or the form
/// completed with the terms the short form drops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    Truncated,
    Completed,
}

/// `P^r Mt_{n,s}` for `-1 <= s < n` (`Mt_{n,-1} = Lt_n`), completed form.
pub fn power_on_m(ctx: AlgebraContext, r: u64, n: u32, s: i32) -> Result<ClosedFormResult> {
    power_on_m_with(ctx, r, n, s, Reading::Completed)
}

/// `P^r Mt_{n,s}`. The truncated sum runs over `-1 <= u <= s`. For `s >= 0`
/// the completed form adds `u = s+1..n-1` with weight `-(alpha_s + 1)` in
/// place of `h - alpha_s`; these come from the `V_2^{p^s}` terms of
/// `St^{(u),R} U_2` with `s < u`.
pub fn power_on_m_with(ctx: AlgebraContext, r: u64, n: u32, s: i32, reading: Reading) -> Result<ClosedFormResult> {
    if s < -1 || s >= n as i32 {
        return Err(AlgebraError::OutOfRange(format!("Mt_{{{n},{s}}} needs -1 <= s < n")));
    }
    let p = ctx.p() as i64;
    let f = ctx.field();
    let h = ctx.h() as i64;
    let frame = Frame::standard(ctx);
    if 2 * r as i64 > p.pow(n) + bracket_neg(ctx.p(), s) {
        return Ok(ClosedFormResult::zero(ctx, "2r > p^n + [-2p^s]"));
    }
    let d = p_adic_digits(r, ctx.p());
    let a = |i: i64| d.get(i) as i64;
    // t_i for i = -1..n-1, stored at offset 1
    let t: Vec<i64> = (-1..n as i64)
        .map(|i| if i == s as i64 { a(i) + 1 - a(i - 1) } else { a(i) - a(i - 1) })
        .collect();
    if t.iter().any(|&x| x < 0) {
        return Ok(ClosedFormResult::zero(ctx, "digit condition fails"));
    }
    let s64 = s as i64;
    let mut den = f.mul(fact(&f, h - a(n as i64 - 1)), fact(&f, t[(s64 + 1) as usize]));
    for i in 0..n as i64 {
        if i != s64 {
            den = f.mul(den, fact(&f, t[(i + 1) as usize]));
        }
    }
    let base = ratio(&f, fact(&f, h - 1), den, "coefficient of P^r Mt")?;
    let low = f.mul(f.reduce(h - a(s64)), base);
    let high = f.mul(f.reduce(-(a(s64) + 1)), base);
    let last = match reading {
        Reading::Completed if s >= 0 => n as i64 - 1,
        _ => s64,
    };
    let mut sum = Element::zero(ctx);
    let mut sym = Symbolic::default();
    for u in -1..=last {
        let tu = t[(u + 1) as usize];
        if tu == 0 {
            continue;
        }
        // Q_{n,u}^{t_u - 1} prod_{i != u} Q_{n,i}^{t_i}, over 0 <= i < n
        let mut exps: Vec<i64> = t[1..].to_vec();
        if u >= 0 {
            exps[u as usize] -= 1;
        }
        let weight = if u <= s64 { low } else { high };
        let term = frame.mtilde(n, u as i32)? * q_product(&frame, n, &exps)?;
        sum = sum + term.scalar_mul(f.mul(weight, f.reduce(tu)));
        let head = if u < 0 { InvariantId::Ltilde { n } } else { InvariantId::Mtilde { n, s: u as i32 } };
        sym = sym.term(f.mul(weight, f.reduce(tu)), [vec![(head, 1)], q_factors(n, &exps)].concat());
    }
    Ok(ClosedFormResult::hit(sum, "2r <= p^n + [-2p^s], digit condition holds", sym))
}

/// `P^r V_{k+1}`.
pub fn power_on_v(ctx: AlgebraContext, r: u64, k: u32) -> Result<ClosedFormResult> {
    let p = ctx.p() as u64;
    let f = ctx.field();
    let frame = Frame::standard(ctx);
    let v = frame.v(k + 1)?;
    if r == p.pow(k) {
        let sym = Symbolic::default().term(1, vec![(InvariantId::V { k: k + 1 }, p as i64)]);
        return Ok(ClosedFormResult::hit(v.pow(p)?, "r = p^k", sym));
    }
    if r > p.pow(k) {
        return Ok(ClosedFormResult::zero(ctx, "r > p^k"));
    }
    let d = p_adic_digits(r, ctx.p());
    let t = steps(&d, k);
    if t.iter().any(|&x| x < 0) {
        return Ok(ClosedFormResult::zero(ctx, "some alpha_i < alpha_{i-1}"));
    }
    let top = if k == 0 { 0 } else { d.get(k as i64 - 1) as i64 };
    let mut den = 1;
    for &ti in &t {
        den = f.mul(den, fact(&f, ti));
    }
    let num = f.mul(f.sign(top as u64), fact(&f, top));
    let c = ratio(&f, num, den, "coefficient of P^r V")?;
    let value = (v * q_product(&frame, k, &t)?).scalar_mul(c);
    let sym = Symbolic::default().term(c, [vec![(InvariantId::V { k: k + 1 }, 1)], q_factors(k, &t)].concat());
    Ok(ClosedFormResult::hit(value, "r < p^k, alpha_i >= alpha_{i-1}", sym))
}

/// `P^r Q_{n,s}`.
pub fn power_on_q(ctx: AlgebraContext, r: u64, n: u32, s: u32) -> Result<ClosedFormResult> {
    if s > n {
        return Err(AlgebraError::OutOfRange(format!("Q_{{{n},{s}}} needs s <= n")));
    }
    let p = ctx.p() as u64;
    let f = ctx.field();
    let frame = Frame::standard(ctx);
    let q = frame.q(n, s)?;
    let top_r = p.pow(n) - p.pow(s);
    if r == top_r {
        let sym = Symbolic::default().term(1, vec![(InvariantId::Q { n, s }, p as i64)]);
        return Ok(ClosedFormResult::hit(q.pow(p)?, "r = p^n - p^s", sym));
    }
    if r > top_r {
        return Ok(ClosedFormResult::zero(ctx, "r > p^n - p^s"));
    }
    let d = p_adic_digits(r, ctx.p());
    let a = |i: i64| d.get(i) as i64;
    let s64 = s as i64;
    let ok = (0..n as i64).all(|i| if i == s64 { a(i) + 1 >= a(i - 1) } else { a(i) >= a(i - 1) });
    if !ok {
        return Ok(ClosedFormResult::zero(ctx, "digit condition fails"));
    }
    let top = a(n as i64 - 1);
    // (alpha_s + 1) / (alpha_s + 1 - alpha_{s-1})! is read as 1 / alpha_s! when
    // alpha_{s-1} = 0, so alpha_s = p - 1 never divides by p! there
    let lead = if a(s64 - 1) == 0 {
        ratio(&f, 1, fact(&f, a(s64)), "coefficient of P^r Q")?
    } else {
        ratio(&f, f.reduce(a(s64) + 1), fact(&f, a(s64) + 1 - a(s64 - 1)), "coefficient of P^r Q")?
    };
    let mut den = 1;
    for i in 0..n as i64 {
        if i != s64 {
            den = f.mul(den, fact(&f, a(i) - a(i - 1)));
        }
    }
    let num = f.mul(f.mul(f.sign(top as u64), fact(&f, top)), lead);
    let c = ratio(&f, num, den, "coefficient of P^r Q")?;
    let mut exps: Vec<i64> = (0..n as i64).map(|i| a(i) - a(i - 1)).collect();
    if s < n {
        exps[s as usize] += 1;
        let value = q_product(&frame, n, &exps)?.scalar_mul(c);
        let sym = Symbolic::default().term(c, q_factors(n, &exps));
        Ok(ClosedFormResult::hit(value, "r < p^n - p^s, digit condition holds", sym))
    } else {
        let sym = Symbolic::default().term(c, q_factors(n, &exps));
        Ok(ClosedFormResult::hit((q * q_product(&frame, n, &exps)?).scalar_mul(c), "r < p^n - p^s", sym))
    }
}

/// `|R| = sum (p^i - 1) r_i`.
pub fn norm(r: &[u32], p: u32) -> u64 {
    r.iter().enumerate().map(|(i, &x)| ((p as u64).pow(i as u32 + 1) - 1) * x as u64).sum()
}

fn as_i64(r: &[u32]) -> Vec<i64> {
    r.iter().map(|&x| x as i64).collect()
}

/// `St^{S,R}(x^e y^b)` in one pair.
pub fn st_on_one_pair(p: u32, s: &[u32], r: &[u32], eps: u32, b: u64) -> Result<Element> {
    if eps > 1 {
        return Err(AlgebraError::OutOfRange(format!("exterior exponent {eps}")));
    }
    let ctx = AlgebraContext::new(p, 1)?;
    let f = ctx.field();
    let c = multinomial(b as i64, &as_i64(r), &f);
    let e = b + norm(r, p);
    match s {
        [] => {
            let xs: &[usize] = if eps == 1 { &[0] } else { &[] };
            Ok(Element::monomial(ctx, c, Monomial::new(xs, &[e as u32])?))
        }
        [u] => {
            let c = if eps == 1 { c } else { 0 };
            Ok(Element::monomial(ctx, c, Monomial::y(0, (e + (p as u64).pow(*u)) as u32)))
        }
        _ => Ok(Element::zero(ctx)),
    }
}

fn l1_power(frame: &Frame, exponent: i64, h: i64) -> Result<Element> {
    if exponent < 0 || exponent % h != 0 {
        return Err(AlgebraError::NonIntegralExponent(format!("Lt_1^({exponent}/{h})")));
    }
    frame.ltilde(1)?.pow((exponent / h) as u64)
}

/// `St^{S,R} U_2` on two pairs, completed form.
pub fn st_on_u2(ctx: AlgebraContext, s: &[u32], r: &[u32]) -> Result<Element> {
    st_on_u2_with(ctx, s, r, Reading::Completed)
}

/// `St^{S,R} U_2` on two pairs. The truncated form weights every term of the
/// `S = empty` sum by `w_0` and, for `S = (u)`, keeps only `s >= u`. The
/// completed form uses `w_s = r_{s+1} + ... + r_n` and adds the terms
/// `s < u` with weight `w_s - h`, which come from `[u,v] = -[v,u]` for
/// `v < u`.
pub fn st_on_u2_with(ctx: AlgebraContext, s: &[u32], r: &[u32], reading: Reading) -> Result<Element> {
    let f = ctx.field();
    let p = ctx.p();
    let h = ctx.h() as i64;
    let n = r.len();
    let frame = Frame::standard(ctx);
    let suffix = |i: usize| -> i64 { r[i..].iter().map(|&x| x as i64).sum() };
    let w = |i: usize| -> i64 {
        match reading {
            Reading::Completed => suffix(i),
            Reading::Truncated => suffix(0),
        }
    };
    let binom = multinomial(h, &as_i64(r), &f);
    if binom == 0 {
        return Ok(Element::zero(ctx));
    }
    let h_inv = f.inv(f.reduce(h)).expect("h < p");
    let norm_r = norm(r, p) as i64;
    let pw = |e: usize| (p as i64).pow(e as u32);
    let v2 = frame.v(2)?;
    match s {
        [] => {
            let mut out = l1_power(&frame, norm_r, h)? * frame.u(2)?;
            for sidx in 0..n {
                let coef = f.mul(h_inv, f.reduce(w(sidx)));
                if coef == 0 {
                    continue;
                }
                let l = l1_power(&frame, norm_r - pw(sidx + 1) + 1, h)?;
                let term = frame.mtilde(1, 0)? * l * v2.pow(pw(sidx) as u64)?;
                out = out + term.scalar_mul(coef);
            }
            Ok(out.scalar_mul(binom))
        }
        [u] if (*u as usize) < n => {
            let u = *u as usize;
            let first = match reading {
                Reading::Completed => 0,
                Reading::Truncated => u,
            };
            let mut out = Element::zero(ctx);
            for sidx in first..n {
                let weight = if sidx >= u { w(sidx) } else { w(sidx) - h };
                let coef = f.mul(h_inv, f.reduce(weight));
                if coef == 0 {
                    continue;
                }
                let l = l1_power(&frame, norm_r - pw(sidx + 1) + pw(u) + h, h)?;
                out = out + (l * v2.pow(pw(sidx) as u64)?).scalar_mul(coef);
            }
            Ok(out.scalar_mul(binom))
        }
        _ => Ok(Element::zero(ctx)),
    }
}

/// Sign applied to each branch of the `V_2` formula. `UNIFORM` keeps both
/// branches positive; `RESOLVED` is the choice that agrees with the Cartan
/// oracle and the Milnor extraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct V2Signs {
    pub top: i8,
    pub sum: i8,
}

impl V2Signs {
    pub const UNIFORM: V2Signs = V2Signs { top: 1, sum: 1 };
    pub const RESOLVED: V2Signs = V2Signs { top: 1, sum: -1 };
}

/// `St^{empty,R} V_2` on two pairs, with `r_0 = p - sum R`.
pub fn st_on_v2(ctx: AlgebraContext, r: &[u32], signs: V2Signs) -> Result<Element> {
    let f = ctx.field();
    let p = ctx.p();
    let frame = Frame::standard(ctx);
    let total: i64 = r.iter().map(|&x| x as i64).sum();
    let r0 = p as i64 - total;
    let full: Vec<i64> = std::iter::once(r0).chain(r.iter().map(|&x| x as i64)).collect();
    let v2 = frame.v(2)?;
    let pick = |s: i8| if s < 0 { p - 1 } else { 1 };
    if let Some(pos) = full.iter().position(|&x| x == p as i64) {
        if full.iter().enumerate().all(|(i, &x)| i == pos || x == 0) {
            return Ok(v2.pow((p as u64).pow(pos as u32))?.scalar_mul(pick(signs.top)));
        }
    }
    if full.iter().any(|&x| x < 0 || x >= p as i64) {
        return Ok(Element::zero(ctx));
    }
    let mut den = 1;
    for &x in &full {
        den = f.mul(den, fact(&f, x));
    }
    let base = ratio(&f, fact(&f, p as i64 - 1), den, "V_2 coefficient")?;
    let norm_r = norm(r, p) as i64;
    let v1 = frame.v(1)?;
    let mut out = Element::zero(ctx);
    for s in 0..r.len() {
        let w: i64 = r[s..].iter().map(|&x| x as i64).sum();
        let c = f.mul(base, f.reduce(w));
        if c == 0 {
            continue;
        }
        let e = norm_r + p as i64 - (p as i64).pow(s as u32 + 1);
        debug_assert!(e >= 0);
        out = out + (v1.pow(e as u64)? * v2.pow((p as u64).pow(s as u32))?).scalar_mul(c);
    }
    Ok(out.scalar_mul(pick(signs.sum)))
}

/// Both sides of `[u,v] = sum_{s=u}^{v-1} V_1^{p^v - p^{s+1} + p^u} V_2^{p^s}`
/// and of `[1;v] = V_1^{p^v - h} U_2 + M_{1,0} sum_{s<v} V_1^{p^v - p^{s+1}} V_2^{p^s}`,
/// on two pairs.
pub fn bracket_identities(ctx: AlgebraContext, u: u32, v: u32) -> Result<[(Element, Element); 2]> {
    if u > v {
        return Err(AlgebraError::OutOfRange(format!("needs u <= v, got u={u}, v={v}")));
    }
    let p = ctx.p() as u64;
    let h = ctx.h() as i64;
    let frame = Frame::standard(ctx);
    let v1 = frame.v(1)?;
    let v2 = frame.v(2)?;
    let first_lhs = frame.bracket_e(&[u, v])?;
    let mut first_rhs = Element::zero(ctx);
    for s in u..v {
        let e = p.pow(v) - p.pow(s + 1) + p.pow(u);
        first_rhs = first_rhs + v1.pow(e)? * v2.pow(p.pow(s))?;
    }
    let second_lhs = frame.bracket_x(&[v])?;
    let e = p.pow(v) as i64 - h;
    // U_2 = M_{2,1} V_1^{h-1}, so a negative power of V_1 folds into it
    let mut second_rhs = if e >= 0 {
        v1.pow(e as u64)? * frame.u(2)?
    } else {
        v1.pow((e + h - 1) as u64)? * frame.m_ks(2, 1)?
    };
    let m10 = frame.m_ks(1, 0)?;
    for s in 0..v {
        second_rhs = second_rhs + m10.clone() * v1.pow(p.pow(v) - p.pow(s + 1))? * v2.pow(p.pow(s))?;
    }
    Ok([(first_lhs, first_rhs), (second_lhs, second_rhs)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::parse;
    use crate::steenrod::p_power;

    fn ctx(p: u32, m: usize) -> AlgebraContext {
        AlgebraContext::new(p, m).unwrap()
    }

    #[test]
    fn identity_branches() {
        let c = ctx(3, 3);
        let fr = Frame::standard(c);
        assert_eq!(power_on_u(c, 0, 1).unwrap().value, fr.u(2).unwrap());
        assert_eq!(power_on_m(c, 0, 2, 1).unwrap().value, fr.mtilde(2, 1).unwrap());
        assert_eq!(power_on_m(c, 0, 2, -1).unwrap().value, fr.ltilde(2).unwrap());
        assert_eq!(power_on_v(c, 0, 2).unwrap().value, fr.v(3).unwrap());
        assert_eq!(power_on_q(c, 0, 2, 1).unwrap().value, fr.q(2, 1).unwrap());
    }

    #[test]
    fn small_cases_against_cartan() {
        let c = ctx(3, 2);
        let fr = Frame::standard(c);
        let u2 = fr.u(2).unwrap();
        assert_eq!(power_on_u(c, 1, 1).unwrap().value, p_power(1, &u2).unwrap());
        let v2 = fr.v(2).unwrap();
        let got = power_on_v(c, 1, 1).unwrap().value;
        assert_eq!(got, parse("-y2^3*y1^2 + y2*y1^4", 3, Some(2)).unwrap());
        assert_eq!(got, p_power(1, &v2).unwrap());
        assert_eq!(power_on_q(c, 1, 1, 0).unwrap().value, parse("2*y1^4", 3, Some(2)).unwrap());
        let c5 = ctx(5, 1);
        assert_eq!(power_on_m(c5, 1, 1, 0).unwrap().value, parse("x1*y1^5", 5, Some(1)).unwrap());
        assert!(!power_on_u(c, 2, 1).unwrap().applicable);
    }

    #[test]
    fn one_pair_cases() {
        assert_eq!(st_on_one_pair(3, &[], &[1], 0, 1).unwrap(), parse("y1^3", 3, Some(1)).unwrap());
        assert_eq!(st_on_one_pair(3, &[0], &[0], 1, 0).unwrap(), parse("y1", 3, Some(1)).unwrap());
        assert!(st_on_one_pair(3, &[0, 1], &[0], 1, 0).unwrap().is_zero());
    }

    #[test]
    fn bracket_identity_pairs() {
        for (p, vmax) in [(3u32, 2u32), (5, 1)] {
            for v in 0..=vmax {
                for u in 0..=v {
                    let [(a, b), (c, d)] = bracket_identities(ctx(p, 2), u, v).unwrap();
                    assert_eq!(a, b, "(i) p={p} u={u} v={v}");
                    assert_eq!(c, d, "(ii) p={p} v={v}");
                }
            }
        }
        assert!(bracket_identities(ctx(3, 2), 2, 1).is_err());
    }

    #[test]
    fn symbolic_forms() {
        assert_eq!(power_on_q(ctx(3, 2), 6, 2, 1).unwrap().symbolic, "Q_{2,1}^3");
        assert_eq!(power_on_v(ctx(3, 2), 3, 1).unwrap().symbolic, "V_{2}^3");
        assert_eq!(power_on_q(ctx(3, 2), 7, 2, 1).unwrap().symbolic, "0");
        assert_eq!(power_on_q(ctx(3, 1), 0, 1, 0).unwrap().symbolic, "Q_{1,0}");
    }

    #[test]
    fn u2_and_v2_small() {
        let c = ctx(3, 2);
        let fr = Frame::standard(c);
        let u2 = fr.u(2).unwrap();
        assert_eq!(st_on_u2(c, &[], &[0]).unwrap(), u2);
        assert_eq!(st_on_u2(c, &[], &[1]).unwrap(), p_power(1, &u2).unwrap());
        assert!(st_on_u2(c, &[0], &[0]).unwrap().is_zero());
        let v2 = fr.v(2).unwrap();
        assert_eq!(st_on_v2(c, &[0], V2Signs::RESOLVED).unwrap(), v2);
        assert_eq!(st_on_v2(c, &[1], V2Signs::RESOLVED).unwrap(), p_power(1, &v2).unwrap());
        assert_eq!(st_on_v2(c, &[3], V2Signs::RESOLVED).unwrap(), v2.pow(3).unwrap());
        assert_eq!(st_on_v2(c, &[1], V2Signs::UNIFORM).unwrap(), p_power(1, &v2).unwrap().neg());
    }
}
