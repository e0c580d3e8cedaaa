//! Expansion over the invariant monomial basis
//! `Mt_{n,s_1} ... Mt_{n,s_k} Lt_n^{h_0} Q_{n,1}^{h_1} ... Q_{n,n-1}^{h_{n-1}}`
//! and extraction of the Milnor basis operations `St^{S,R}` from the
//! coefficients of `d_n^* P_n z`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::combinatorics::{mu, seq_stats, MilnorIndex};
use crate::element::{AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::invariants::Frame;
use crate::monomial::Monomial;
use crate::steenrod::d_star_p;

/// Index `(S, H)` of a basis monomial on a block of `n = H.len()` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisKey {
    pub s: Vec<u32>,
    pub h: Vec<u32>,
}

impl BasisKey {
    pub fn new(s: Vec<u32>, h: Vec<u32>) -> Result<Self> {
        let n = h.len() as u32;
        if n == 0 {
            return Err(AlgebraError::OutOfRange("basis monomials need a block of at least one pair".into()));
        }
        if s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&x| x >= n) {
            return Err(AlgebraError::OutOfRange(format!("exterior indices {s:?} for a block of {n}")));
        }
        Ok(BasisKey { s, h })
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn degree(&self, p: u32) -> u64 {
        let n = self.n() as u32;
        let pn = (p as u64).pow(n);
        let ext: u64 = self.s.iter().map(|&s| pn - 2 * (p as u64).pow(s)).sum();
        let poly: u64 = self
            .h
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                let g = if i == 0 { pn - 1 } else { 2 * (pn - (p as u64).pow(i as u32)) };
                g * e as u64
            })
            .sum();
        ext + poly
    }

    /// The basis monomial on pairs `0..n` of an `n`-pair context.
    pub fn element(&self, p: u32) -> Result<Element> {
        let ctx = AlgebraContext::new(p, self.n())?;
        let key = (p, self.clone());
        if let Some(v) = basis_cache().lock().expect("cache poisoned").get(&key) {
            return Ok((**v).clone());
        }
        let frame = Frame::standard(ctx);
        let n = self.n() as u32;
        let mut out = Element::one(ctx);
        for &s in &self.s {
            out = out.try_mul(&frame.mtilde(n, s as i32)?)?;
        }
        for (i, &e) in self.h.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = if i == 0 { frame.ltilde(n)? } else { frame.q(n, i as u32)? };
            out = out.try_mul(&g.pow(e as u64)?)?;
        }
        basis_cache().lock().expect("cache poisoned").insert(key, Arc::new(out.clone()));
        Ok(out)
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(S={:?}, H={:?})", self.s, self.h)
    }
}

type BasisCache = Mutex<HashMap<(u32, BasisKey), Arc<Element>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// All basis keys of total degree `d` on a block of `n` pairs.
pub fn basis_keys(p: u32, n: usize, d: u64) -> Vec<BasisKey> {
    let pn = (p as u64).pow(n as u32);
    let gen_deg: Vec<u64> = (0..n)
        .map(|i| if i == 0 { pn - 1 } else { 2 * (pn - (p as u64).pow(i as u32)) })
        .collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<u32> = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
        let ext: u64 = s.iter().map(|&i| pn - 2 * (p as u64).pow(i)).sum();
        if ext > d {
            continue;
        }
        let mut h = vec![0u32; n];
        fill(&gen_deg, 0, d - ext, &mut h, &s, &mut out);
    }
    out.sort();
    out
}

fn fill(gen_deg: &[u64], i: usize, rest: u64, h: &mut Vec<u32>, s: &[u32], out: &mut Vec<BasisKey>) {
    if i == gen_deg.len() {
        if rest == 0 {
            out.push(BasisKey { s: s.to_vec(), h: h.clone() });
        }
        return;
    }
    let g = gen_deg[i];
    let mut e = 0u64;
    while e * g <= rest {
        h[i] = e as u32;
        fill(gen_deg, i + 1, rest - e * g, h, s, out);
        e += 1;
    }
    h[i] = 0;
}

/// Row-reduced span of a finite list of linearly independent elements.
pub(crate) struct Span {
    len: usize,
    // leading monomial -> (reduced element with leading coefficient 1, coordinates)
    pivots: HashMap<Monomial, (Element, Vec<u32>)>,
}

impl Span {
    pub(crate) fn new(p: u32, elements: Vec<Element>) -> Result<Self> {
        let f = crate::field::PrimeField::new(p)?;
        let len = elements.len();
        let mut pivots: HashMap<Monomial, (Element, Vec<u32>)> = HashMap::new();
        for (j, mut v) in elements.into_iter().enumerate() {
            let mut coords = vec![0u32; len];
            coords[j] = 1;
            loop {
                let Some((lead, c)) = v.leading().map(|(m, c)| (*m, c)) else {
                    return Err(AlgebraError::DependentBasis(p));
                };
                match pivots.get(&lead) {
                    Some((row, rc)) => {
                        let k = f.neg(c);
                        v.add_scaled(k, row)?;
                        axpy(&f, &mut coords, k, rc);
                    }
                    None => {
                        let inv = f.inv(c).expect("nonzero");
                        let v = v.scalar_mul(inv);
                        coords.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                        pivots.insert(lead, (v, coords));
                        break;
                    }
                }
            }
        }
        Ok(Span { len, pivots })
    }

    /// Coordinates of `a` in the spanning list.
    pub(crate) fn solve(&self, a: &Element) -> Result<Vec<u32>> {
        let f = a.ctx().field();
        let mut v = a.clone();
        let mut coords = vec![0u32; self.len];
        while let Some((lead, c)) = v.leading().map(|(m, c)| (*m, c)) {
            let (row, rc) = self.pivots.get(&lead).ok_or(AlgebraError::NotInSpan)?;
            v.add_scaled(f.neg(c), row)?;
            axpy(&f, &mut coords, c, rc);
        }
        Ok(coords)
    }
}

/// The basis monomials of one degree, row-reduced so that elements of that
/// degree can be written in the basis.
pub struct Decomposer {
    keys: Vec<BasisKey>,
    span: Span,
}

impl Decomposer {
    pub fn new(p: u32, n: usize, d: u64) -> Result<Self> {
        let keys = basis_keys(p, n, d);
        let elements = keys.iter().map(|k| k.element(p)).collect::<Result<Vec<_>>>()?;
        Ok(Decomposer { span: Span::new(p, elements)?, keys })
    }

    pub fn keys(&self) -> &[BasisKey] {
        &self.keys
    }

    /// Coordinates of `a` (homogeneous of this degree) in the basis.
    pub fn solve(&self, a: &Element) -> Result<Vec<u32>> {
        self.span.solve(a)
    }
}

fn axpy(f: &crate::field::PrimeField, dst: &mut [u32], k: u32, src: &[u32]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d = f.add(*d, f.mul(k, *s));
    }
}

fn decomposer(p: u32, n: usize, d: u64) -> Result<Arc<Decomposer>> {
    type Cache = Mutex<HashMap<(u32, usize, u64), Arc<Decomposer>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache poisoned").get(&(p, n, d)) {
        return Ok(v.clone());
    }
    let built = Arc::new(Decomposer::new(p, n, d)?);
    Ok(cache.lock().expect("cache poisoned").entry((p, n, d)).or_insert(built).clone())
}

/// `sum_key basis(key) (x) coefficient(key)`, with coefficients on the X-side
/// pairs (a zero-pair context when there is no X side).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantExpansion {
    pub n: usize,
    pub x_ctx: AlgebraContext,
    pub terms: BTreeMap<BasisKey, Element>,
}

impl InvariantExpansion {
    pub fn coefficient(&self, key: &BasisKey) -> Element {
        self.terms.get(key).cloned().unwrap_or_else(|| Element::zero(self.x_ctx))
    }

    /// Scalar coefficient when there is no X side.
    pub fn scalar(&self, key: &BasisKey) -> u32 {
        self.terms.get(key).map(|e| e.coefficient(&Monomial::ONE)).unwrap_or(0)
    }

    /// Rebuilds the element on `n + m_X` pairs (split after the block).
    pub fn reassemble(&self) -> Result<Element> {
        let p = self.x_ctx.p();
        let target = AlgebraContext::new(p, self.n + self.x_ctx.m())?.with_split(self.n)?;
        let mut out = Element::zero(target);
        for (key, coef) in &self.terms {
            let basis = key.element(p)?;
            let mut terms = Vec::new();
            for (bm, bc) in basis.terms() {
                for (cm, cc) in coef.terms() {
                    let (neg, prod) = bm.mul(&cm.shift_up(self.n)?).expect("disjoint pairs");
                    let c = (bc as i64) * (cc as i64);
                    terms.push((if neg { -c } else { c }, prod));
                }
            }
            out = out.try_add(&Element::from_terms(target, terms)?)?;
        }
        Ok(out)
    }
}

/// Writes `a` (on `n + m_X` pairs, first `n` the block) in the basis, one
/// X-side monomial at a time.
pub fn invariant_decompose(a: &Element, n: usize) -> Result<InvariantExpansion> {
    let ctx = a.ctx();
    let p = ctx.p();
    if n == 0 || n > ctx.m() {
        return Err(AlgebraError::OutOfRange(format!("block of {n} pairs in a context of {}", ctx.m())));
    }
    let block = AlgebraContext::new(p, n)?;
    let x_ctx = AlgebraContext::new(p, ctx.m() - n)?;
    let mut grouped: BTreeMap<Monomial, Element> = BTreeMap::new();
    for (m, c) in a.terms() {
        let (low, high) = m.split_at(n);
        grouped.entry(high.shift_down(n)).or_insert_with(|| Element::zero(block)).add_monomial(c, low);
    }
    let mut terms: BTreeMap<BasisKey, Element> = BTreeMap::new();
    for (high, low) in grouped {
        for d in low.degree_set() {
            let part = low.component(d);
            let dec = decomposer(p, n, d as u64)?;
            let coords = dec.solve(&part)?;
            for (key, c) in dec.keys().iter().zip(coords) {
                if c != 0 {
                    terms.entry(key.clone()).or_insert_with(|| Element::zero(x_ctx)).add_monomial(c, high);
                }
            }
        }
    }
    terms.retain(|_, v| !v.is_zero());
    Ok(InvariantExpansion { n, x_ctx, terms })
}

/// All nonzero `St^{S,R} a` with `l(R) = n`, read off from `d_n^* P_n a`.
pub fn milnor_table(n: usize, a: &Element) -> Result<BTreeMap<MilnorIndex, Element>> {
    type Cache = Mutex<HashMap<(usize, Element), Arc<BTreeMap<MilnorIndex, Element>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let plain = a.clone().with_ctx(a.ctx().resized(a.ctx().m())?)?;
    if let Some(v) = cache.lock().expect("cache poisoned").get(&(n, plain.clone())) {
        return Ok((**v).clone());
    }
    let table = build_table(n, &plain)?;
    cache.lock().expect("cache poisoned").insert((n, plain), Arc::new(table.clone()));
    Ok(table)
}

fn build_table(n: usize, a: &Element) -> Result<BTreeMap<MilnorIndex, Element>> {
    if n == 0 {
        return Err(AlgebraError::OutOfRange("Milnor extraction needs l(R) >= 1".into()));
    }
    let f = a.ctx().field();
    let mut out = BTreeMap::new();
    if a.is_zero() {
        return Ok(out);
    }
    let q = a.degree().ok_or(AlgebraError::Inhomogeneous)? as i64;
    let expansion = invariant_decompose(&d_star_p(n, a)?, n)?;
    let scale = f.inv(mu(q as u64, n as u64, &f)).expect("mu is a unit");
    for (key, coef) in expansion.terms {
        let k = key.s.len() as i64;
        // h_0 = q - k - 2 (r_1 + ... + r_n) fixes r_n
        let twice = q - k - key.h[0] as i64;
        let tail: i64 = key.h[1..].iter().map(|&x| x as i64).sum();
        if twice < 0 || twice % 2 != 0 || twice / 2 < tail {
            return Err(AlgebraError::OutOfRange(format!("expansion key {key} outside the admissible pattern")));
        }
        let mut r: Vec<u32> = key.h[1..].to_vec();
        r.push((twice / 2 - tail) as u32);
        let idx = MilnorIndex::new(key.s.clone(), r)?;
        let sign = f.sign(seq_stats(&idx.s, &idx.r, q, f.p()).r_sr);
        out.insert(idx, coef.scalar_mul(f.mul(scale, sign)));
    }
    Ok(out)
}

/// The basis key paired with `St^{S,R}` for an input of degree `q`.
pub fn key_for(idx: &MilnorIndex, q: i64, p: u32) -> Result<BasisKey> {
    let st = seq_stats(&idx.s, &idx.r, q, p);
    if st.r0 < 0 {
        return Err(AlgebraError::Inadmissible(idx.to_string(), q as u32));
    }
    let mut h = vec![st.r0 as u32];
    h.extend_from_slice(&idx.r[..idx.r.len() - 1]);
    BasisKey::new(idx.s.clone(), h)
}

/// `St^{S,R} a`. `R` is padded with zeros when `S` reaches past its length.
pub fn milnor_st(idx: &MilnorIndex, a: &Element) -> Result<Element> {
    let q = match a.degree() {
        Some(q) => q as i64,
        None if a.is_zero() => return Ok(a.clone()),
        None => return Err(AlgebraError::Inhomogeneous),
    };
    let idx = padded(idx);
    let st = idx.stats(q, a.p());
    if st.r0 < 0 {
        return Err(AlgebraError::Inadmissible(idx.to_string(), q as u32));
    }
    let table = milnor_table(idx.r.len(), a)?;
    let plain = a.ctx().resized(a.ctx().m())?;
    Ok(table.get(&idx).cloned().unwrap_or_else(|| Element::zero(plain)))
}

/// `R` extended by zeros to length `max(l(R), max(S) + 1, 1)`.
pub fn padded(idx: &MilnorIndex) -> MilnorIndex {
    let need = idx.s.iter().map(|&s| s as usize + 1).max().unwrap_or(0).max(idx.r.len()).max(1);
    let mut r = idx.r.clone();
    r.resize(need, 0);
    MilnorIndex { s: idx.s.clone(), r }
}

/// `mu(q)^n sum (-1)^{r(S,R)} basis(S, R*_{q-k}) (x) St^{S,R} a`.
pub fn reassemble_power_map(n: usize, a: &Element) -> Result<Element> {
    let f = a.ctx().field();
    let q = a.degree().ok_or(AlgebraError::Inhomogeneous)? as i64;
    let x_ctx = a.ctx().resized(a.ctx().m())?;
    let mut terms = BTreeMap::new();
    let m = mu(q as u64, n as u64, &f);
    for (idx, value) in milnor_table(n, a)? {
        let key = key_for(&idx, q, f.p())?;
        let sign = f.sign(seq_stats(&idx.s, &idx.r, q, f.p()).r_sr);
        terms.insert(key, value.scalar_mul(f.mul(m, sign)));
    }
    InvariantExpansion { n, x_ctx, terms }.reassemble()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::parse;
    use crate::steenrod::p_power;

    fn el(text: &str, p: u32, m: usize) -> Element {
        parse(text, p, Some(m)).unwrap()
    }

    #[test]
    fn keys_by_degree() {
        // n = 1, p = 3: Mt_{1,0} has degree 1, Lt_1 degree 2
        let keys = basis_keys(3, 1, 5);
        assert_eq!(keys, vec![BasisKey { s: vec![0], h: vec![2] }]);
        assert_eq!(basis_keys(3, 1, 4), vec![BasisKey { s: vec![], h: vec![2] }]);
        for k in basis_keys(5, 2, 40) {
            assert_eq!(k.degree(5), 40);
        }
    }

    #[test]
    fn decompose_basis_monomial() {
        let ctx = AlgebraContext::new(3, 2).unwrap().with_split(1).unwrap();
        let a = (el("y1^2", 3, 2) * el("y2", 3, 2)).with_ctx(ctx).unwrap();
        let e = invariant_decompose(&a, 1).unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.coefficient(&BasisKey::new(vec![], vec![2]).unwrap()), el("y1", 3, 1));
        assert_eq!(e.reassemble().unwrap(), a);
    }

    #[test]
    fn decompose_power_map_of_y() {
        let v = d_star_p(1, &el("y1", 3, 1)).unwrap();
        let e = invariant_decompose(&v, 1).unwrap();
        // V_2 = -(Q_{1,0} y - Q_{1,1} y^3), Q_{1,0} = Lt_1^2
        assert_eq!(e.coefficient(&BasisKey::new(vec![], vec![2]).unwrap()), el("-y1", 3, 1));
        assert_eq!(e.coefficient(&BasisKey::new(vec![], vec![0]).unwrap()), el("y1^3", 3, 1));
        assert_eq!(e.terms.len(), 2);
    }

    #[test]
    fn outside_span() {
        let ctx = AlgebraContext::new(5, 2).unwrap().with_split(1).unwrap();
        let a = el("y1*y2", 5, 2).with_ctx(ctx).unwrap();
        assert_eq!(invariant_decompose(&a, 1), Err(AlgebraError::NotInSpan));
    }

    #[test]
    fn extraction_matches_cartan() {
        for text in ["x1", "y1", "y1^2", "x1*y1", "y1^3"] {
            let a = el(text, 3, 1);
            let q = a.degree().unwrap() as usize;
            for r in 0..=q / 2 {
                let st = milnor_st(&MilnorIndex::single(r as u32), &a).unwrap();
                assert_eq!(st, p_power(r, &a).unwrap(), "{text} r={r}");
            }
        }
    }

    #[test]
    fn bockstein_index() {
        let x = el("x1", 3, 1);
        let st = milnor_st(&MilnorIndex::new(vec![0], vec![0]).unwrap(), &x).unwrap();
        assert_eq!(st, el("y1", 3, 1));
    }

    #[test]
    fn two_entry_multinomials() {
        let f = crate::field::PrimeField::new(3).unwrap();
        let y = el("y1", 3, 1);
        for b in 1..=4u32 {
            let a = y.pow(b as u64).unwrap();
            for r1 in 0..=b {
                for r2 in 0..=(b - r1) {
                    let idx = MilnorIndex::new(vec![], vec![r1, r2]).unwrap();
                    let c = crate::combinatorics::multinomial(b as i64, &[r1 as i64, r2 as i64], &f);
                    let e = b + 2 * r1 + 8 * r2;
                    let expected = Element::monomial(a.ctx(), c, Monomial::y(0, e));
                    assert_eq!(milnor_st(&idx, &a).unwrap(), expected, "b={b} R=({r1},{r2})");
                }
            }
        }
    }

    #[test]
    fn round_trip() {
        for n in 1..=2 {
            for text in ["x1", "y1", "y1^2", "x1*y1", "y1^3"] {
                let a = el(text, 3, 1);
                assert_eq!(reassemble_power_map(n, &a).unwrap(), d_star_p(n, &a).unwrap(), "{text} n={n}");
            }
        }
    }

    #[test]
    fn inadmissible_index() {
        let y = el("y1", 3, 1);
        let idx = MilnorIndex::new(vec![], vec![1, 1]).unwrap();
        assert!(matches!(milnor_st(&idx, &y), Err(AlgebraError::Inadmissible(_, 2))));
        let mixed = el("y1 + x1", 3, 1);
        assert_eq!(milnor_st(&MilnorIndex::single(0), &mixed), Err(AlgebraError::Inhomogeneous));
    }
}
