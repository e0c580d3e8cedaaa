//! Steenrod operations on E(x) (x) P(y).
//!
//! Two independent realizations live here. The first is the unstable action
//! given by generator rules (`P^1 y = y^p`, `P^r x = 0` for `r >= 1`) and
//! the Cartan formula, together with the Bockstein. The second is Mui's
//! power map `d_n^* P_n`, built from its values on generators and its
//! multiplicativity up to the sign `(-1)^{n h q r}`.

use crate::element::{AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::invariants::{Frame, InvariantId};
use crate::monomial::Monomial;

/// `beta`, the derivation with `beta x_i = y_i`, `beta y_i = 0` and
/// `beta(uv) = beta(u) v + (-1)^{deg u} u beta(v)`.
pub fn bockstein(a: &Element) -> Result<Element> {
    let ctx = a.ctx();
    a.map_terms(ctx, |m| {
        let mut out = Element::zero(ctx);
        for (pos, i) in m.xs().enumerate() {
            let mut ys = *m.ys();
            ys[i] += 1;
            let rest = Monomial::from_raw(m.x_mask() & !(1 << i), ys);
            let c = if pos % 2 == 0 { 1 } else { ctx.p() - 1 };
            out.add_monomial(c, rest);
        }
        Ok(out)
    })
}

/// The components `P^0 a, P^1 a, ..., P^{r_max} a` of the total power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalPower {
    pub components: Vec<Element>,
}

impl TotalPower {
    pub fn get(&self, r: usize) -> Option<&Element> {
        self.components.get(r)
    }

    fn unit(ctx: AlgebraContext, len: usize, lead: Element) -> Self {
        let mut components = vec![Element::zero(ctx); len];
        components[0] = lead;
        TotalPower { components }
    }

    /// Truncated product of two total powers.
    fn mul(&self, other: &TotalPower) -> Result<TotalPower> {
        let len = self.components.len();
        let ctx = self.components[0].ctx();
        let mut out = vec![Element::zero(ctx); len];
        for (i, a) in self.components.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.components.iter().enumerate().take(len - i) {
                if !b.is_zero() {
                    let prod = a.try_mul(b)?;
                    out[i + j].add_scaled(1, &prod)?;
                }
            }
        }
        Ok(TotalPower { components: out })
    }
}

/// `(y_i + y_i^p)^e` truncated, i.e. `P^a(y_i^e) = C(e, a) y_i^{e + a(p-1)}`.
fn y_power_series(ctx: AlgebraContext, i: usize, e: u32, len: usize) -> TotalPower {
    let f = ctx.field();
    let p = ctx.p();
    let mut tp = TotalPower::unit(ctx, len, Element::y_pow(ctx, i, e));
    for a in 1..len.min(e as usize + 1) {
        let c = f.binomial(e as u64, a as u64);
        if c != 0 {
            tp.components[a] = Element::monomial(ctx, c, Monomial::y(i, e + a as u32 * (p - 1)));
        }
    }
    tp
}

/// Total power of `a` up to `P^{r_max}`, by the Cartan formula applied
/// factor by factor to every monomial.
pub fn total_power(a: &Element, r_max: usize) -> Result<TotalPower> {
    let ctx = a.ctx();
    let len = r_max + 1;
    let mut acc = TotalPower::unit(ctx, len, Element::zero(ctx));
    for (m, c) in a.terms() {
        let xs = Monomial::from_raw(m.x_mask(), [0; crate::monomial::MAX_PAIRS]);
        let mut tp = TotalPower::unit(ctx, len, Element::monomial(ctx, c, xs));
        for (i, &e) in m.ys().iter().enumerate() {
            if e > 0 {
                tp = tp.mul(&y_power_series(ctx, i, e, len))?;
            }
        }
        for (slot, v) in acc.components.iter_mut().zip(tp.components) {
            slot.add_scaled(1, &v)?;
        }
    }
    Ok(acc)
}

/// `P^r a`.
pub fn p_power(r: usize, a: &Element) -> Result<Element> {
    Ok(total_power(a, r)?.components.swap_remove(r))
}

/// Mui's power map `d_n^* P_n`. Every pair of `a` is treated as an X-side
/// pair; the result lives on `n + m` pairs, the first `n` forming the new
/// invariant block, and carries that split. Returns `TouchesBlock` when `a`
/// itself carries a split and uses pairs inside its block.
pub fn d_star_p(n: usize, a: &Element) -> Result<Element> {
    let src = a.ctx();
    if let Some(block) = src.split() {
        if block > 0 && a.terms().any(|(m, _)| m.xs().any(|i| i < block) || m.ys()[..block].iter().any(|&e| e > 0)) {
            return Err(AlgebraError::TouchesBlock);
        }
    }
    let mx = src.m();
    let target = AlgebraContext::new(src.p(), n + mx)?.with_split(n)?;
    if n == 0 {
        return a.clone().with_ctx(target);
    }
    let f = src.field();
    let h = src.h() as u64;
    // (-h!)^n
    let scale = f.pow(f.neg(f.factorial(h)), n as u64);
    let mut xs = Vec::with_capacity(mx);
    let mut ys = Vec::with_capacity(mx);
    for i in 0..mx {
        let mut vars: Vec<usize> = (0..n).collect();
        vars.push(n + i);
        let frame = Frame::new(target, vars)?;
        let k = n as u32 + 1;
        xs.push(frame.get(&InvariantId::U { k })?.scalar_mul(scale).with_ctx(target)?);
        ys.push(frame.get(&InvariantId::V { k })?.with_ctx(target)?);
    }
    // multiplying k odd factors left to right picks up (-1)^{n h (0 + 1 + ... + (k-1))}
    let signed = a.map_terms(src, |m| {
        let k = m.x_len() as u64;
        let parity = (n as u64 * h * (k * k.saturating_sub(1) / 2)) % 2;
        Ok(Element::monomial(src, f.sign(parity), *m))
    })?;
    signed.substitute(target, &xs, &ys)?.with_ctx(target)
}

/// Checks `d_n^* P_n = d_{n-s}^* P_{n-s} d_s^* P_s` on `a`. The outer map
/// prepends its block in front of the inner one.
pub fn compose_check(s: usize, n: usize, a: &Element) -> Result<bool> {
    if s > n {
        return Err(AlgebraError::OutOfRange(format!("compose needs s <= n, got s={s}, n={n}")));
    }
    let direct = d_star_p(n, a)?;
    let inner = d_star_p(s, a)?;
    let plain = inner.ctx().resized(inner.ctx().m())?;
    let nested = d_star_p(n - s, &inner.with_ctx(plain)?)?;
    Ok(direct == nested)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::parse;

    fn el(text: &str, p: u32, m: usize) -> Element {
        parse(text, p, Some(m)).unwrap()
    }

    #[test]
    fn bockstein_rules() {
        assert_eq!(bockstein(&el("x1", 3, 2)).unwrap(), el("y1", 3, 2));
        assert!(bockstein(&el("y1^3", 3, 2)).unwrap().is_zero());
        assert_eq!(bockstein(&el("x1*x2", 3, 2)).unwrap(), el("y1*x2 - x1*y2", 3, 2));
        let a = el("x1*x2*y1 + 2*x2*y2^4", 5, 2);
        assert!(bockstein(&bockstein(&a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn cartan_small_cases() {
        let a = el("y2*y1^2", 3, 2);
        assert_eq!(p_power(0, &a).unwrap(), a);
        assert_eq!(p_power(1, &el("y1", 3, 1)).unwrap(), el("y1^3", 3, 1));
        assert_eq!(p_power(1, &a).unwrap(), el("y2^3*y1^2 + 2*y2*y1^4", 3, 2));
        assert!(p_power(2, &el("y1", 3, 1)).unwrap().is_zero());
        assert!(p_power(1, &el("x1", 3, 1)).unwrap().is_zero());
        let tp = total_power(&el("x1*y1^2", 5, 1), 3).unwrap();
        assert_eq!(tp.get(1).unwrap(), &el("2*x1*y1^6", 5, 1));
        assert_eq!(tp.get(2).unwrap(), &el("x1*y1^10", 5, 1));
        assert!(tp.get(3).unwrap().is_zero());
    }

    #[test]
    fn power_map_on_generators() {
        // one pair, p = 3: d_1 P_1 y = V_2(y1, y) and d_1 P_1 x = -U_2
        let y = el("y1", 3, 1);
        assert_eq!(d_star_p(1, &y).unwrap(), el("y2^3 - y2*y1^2", 3, 2));
        let x = el("x1", 3, 1);
        assert_eq!(d_star_p(1, &x).unwrap(), el("-x1*y2 + x2*y1", 3, 2));
        let y2 = el("y1^2", 3, 1);
        assert_eq!(d_star_p(1, &y2).unwrap(), el("y2^3 - y2*y1^2", 3, 2).pow(2).unwrap());
        assert_eq!(d_star_p(0, &y2).unwrap(), y2);
    }

    #[test]
    fn generator_images_match_invariant_forms() {
        // (h!)^n (Lt_n x + sum (-1)^{s+1} Mt_{n,s} y^{p^s}) and
        // (-1)^n sum (-1)^s Q_{n,s} y^{p^s}
        for (p, n) in [(3u32, 1usize), (3, 2), (5, 1)] {
            let ctx = AlgebraContext::new(p, n + 1).unwrap();
            let frame = Frame::new(ctx, (0..n).collect()).unwrap();
            let f = ctx.field();
            let h = f.half() as u64;
            let x = Element::x(ctx, n);
            let y = |e: u64| Element::y_pow(ctx, n, e as u32);
            let mut ux = frame.ltilde(n as u32).unwrap() * x;
            for s in 0..n {
                let t = frame.mtilde(n as u32, s as i32).unwrap() * y((p as u64).pow(s as u32));
                ux = ux + t.scalar_mul(f.sign(s as u64 + 1));
            }
            let ux = ux.scalar_mul(f.pow(f.factorial(h), n as u64));
            let mut vy = Element::zero(ctx);
            for s in 0..=n {
                vy = vy + (frame.q(n as u32, s as u32).unwrap() * y((p as u64).pow(s as u32))).scalar_mul(f.sign(s as u64));
            }
            let vy = vy.scalar_mul(f.sign(n as u64));
            let src = AlgebraContext::new(p, 1).unwrap();
            assert_eq!(d_star_p(n, &Element::x(src, 0)).unwrap(), ux, "x at p={p} n={n}");
            assert_eq!(d_star_p(n, &Element::y(src, 0)).unwrap(), vy, "y at p={p} n={n}");
        }
    }

    #[test]
    fn composition() {
        for text in ["x1", "y1", "y1^2", "x1*y1"] {
            let a = el(text, 3, 1);
            for s in 0..=2 {
                assert!(compose_check(s, 2, &a).unwrap(), "{text} s={s}");
            }
        }
    }

    #[test]
    fn refuses_block_input() {
        let ctx = AlgebraContext::new(3, 2).unwrap().with_split(1).unwrap();
        let a = Element::y(ctx, 0);
        assert_eq!(d_star_p(1, &a), Err(AlgebraError::TouchesBlock));
    }
}
