//! Dual bases, the pairing, and the duality between the Milnor operations
//! on `U_{k+1}^delta V_{k+1}^{1-delta}` (indexed by `(S', R')`, `l(R') = n`)
//! and on `Mt_{n,s}^delta Q_{n,s}^{1-delta}` (indexed by `(S, R)`, `l(R) = k`).
//!
//! The invariant side is the algebra on a block of `m` pairs with basis
//! `Mt_S Lt^{h_0} Q_1^{h_1} ... Q_{m-1}^{h_{m-1}}`; the power side is that
//! algebra on the first `k` of `k + 1` pairs tensored with
//! `E(U_{k+1}) (x) P(V_{k+1})`. Dual elements are only ever paired, so a
//! dual index is simply the key of the basis monomial it picks out.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::bracket_neg;
use crate::combinatorics::{seq_stats, MilnorIndex};
use crate::element::{AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::expansion::{basis_keys, invariant_decompose, milnor_st, milnor_table, BasisKey, InvariantExpansion, Span};
use crate::invariants::Frame;
use crate::monomial::Monomial;

/// Key of `Mt_S Qt^H U_{k+1}^e V_{k+1}^j` on `k + 1` pairs, `k = H.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PowerKey {
    pub block: BasisKey,
    pub e: u32,
    pub j: u32,
}

impl PowerKey {
    pub fn new(block: BasisKey, e: u32, j: u32) -> Result<Self> {
        if e > 1 {
            return Err(AlgebraError::OutOfRange(format!("exterior exponent of U is {e}")));
        }
        Ok(PowerKey { block, e, j })
    }

    pub fn k(&self) -> usize {
        self.block.n()
    }

    pub fn degree(&self, p: u32) -> u64 {
        let pk = (p as u64).pow(self.k() as u32);
        self.block.degree(p) + (self.e as u64 + 2 * self.j as u64) * pk
    }

    pub fn element(&self, p: u32) -> Result<Element> {
        let k = self.k();
        let ctx = AlgebraContext::new(p, k + 1)?;
        let frame = Frame::standard(ctx);
        let map: Vec<usize> = (0..k).collect();
        let mut out = self.block.element(p)?.relabel(ctx, &map)?;
        if self.e == 1 {
            out = out.try_mul(&frame.u(k as u32 + 1)?)?;
        }
        if self.j > 0 {
            out = out.try_mul(&frame.v(k as u32 + 1)?.pow(self.j as u64)?)?;
        }
        Ok(out)
    }
}

/// A dual basis element, named by the basis monomial it is dual to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DualIndex {
    /// `mt_S qt_H` on a block of `H.len()` pairs.
    Invariant(BasisKey),
    /// `mt_S qt_H (x) u^e gamma_j(v)` on `H.len() + 1` pairs.
    Power(PowerKey),
}

/// All power-side keys of total degree `d` with a block of `k` pairs.
pub fn power_keys(p: u32, k: usize, d: u64) -> Vec<PowerKey> {
    let pk = (p as u64).pow(k as u32);
    let mut out = Vec::new();
    for e in 0..=1u32 {
        let mut j = 0u32;
        while (e as u64 + 2 * j as u64) * pk <= d {
            let rest = d - (e as u64 + 2 * j as u64) * pk;
            out.extend(basis_keys(p, k, rest).into_iter().map(|block| PowerKey { block, e, j }));
            j += 1;
        }
    }
    out.sort();
    out
}

struct PowerDecomposer {
    keys: Vec<PowerKey>,
    span: Span,
}

fn power_decomposer(p: u32, k: usize, d: u64) -> Result<Arc<PowerDecomposer>> {
    type Cache = Mutex<HashMap<(u32, usize, u64), Arc<PowerDecomposer>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache poisoned").get(&(p, k, d)) {
        return Ok(v.clone());
    }
    let keys = power_keys(p, k, d);
    let elements = keys.iter().map(|key| key.element(p)).collect::<Result<Vec<_>>>()?;
    let built = Arc::new(PowerDecomposer { span: Span::new(p, elements)?, keys });
    Ok(cache.lock().expect("cache poisoned").entry((p, k, d)).or_insert(built).clone())
}

/// Coordinates of `a` (on `k + 1` pairs) in the power-side basis.
pub fn power_expansion(a: &Element, k: usize) -> Result<BTreeMap<PowerKey, u32>> {
    let ctx = a.ctx();
    if k == 0 || ctx.m() != k + 1 {
        return Err(AlgebraError::OutOfRange(format!("power side with a block of {k} pairs in a context of {}", ctx.m())));
    }
    let mut out = BTreeMap::new();
    for d in a.degree_set() {
        let dec = power_decomposer(ctx.p(), k, d as u64)?;
        for (key, c) in dec.keys.iter().zip(dec.span.solve(&a.component(d))?) {
            if c != 0 {
                out.insert(key.clone(), c);
            }
        }
    }
    Ok(out)
}

/// Scalar expansion of `a` over the invariant basis of all its pairs.
fn invariant_coordinates(a: &Element) -> Result<Arc<InvariantExpansion>> {
    type Cache = Mutex<HashMap<Element, Arc<InvariantExpansion>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let plain = a.clone().with_ctx(a.ctx().resized(a.ctx().m())?)?;
    if let Some(v) = cache.lock().expect("cache poisoned").get(&plain) {
        return Ok(v.clone());
    }
    let built = Arc::new(invariant_decompose(&plain, plain.ctx().m())?);
    Ok(cache.lock().expect("cache poisoned").entry(plain).or_insert(built).clone())
}

fn power_coordinates(a: &Element, k: usize) -> Result<Arc<BTreeMap<PowerKey, u32>>> {
    type Cache = Mutex<HashMap<(usize, Element), Arc<BTreeMap<PowerKey, u32>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let plain = a.clone().with_ctx(a.ctx().resized(a.ctx().m())?)?;
    if let Some(v) = cache.lock().expect("cache poisoned").get(&(k, plain.clone())) {
        return Ok(v.clone());
    }
    let built = Arc::new(power_expansion(&plain, k)?);
    Ok(cache.lock().expect("cache poisoned").entry((k, plain)).or_insert(built).clone())
}

/// `<a, d>`: the coefficient of the basis monomial dual to `d` in `a`.
pub fn pair(a: &Element, d: &DualIndex) -> Result<u32> {
    match d {
        DualIndex::Invariant(key) => {
            if a.ctx().m() != key.n() {
                return Err(AlgebraError::OutOfRange(format!(
                    "invariant-side index on {} pairs against an element on {}",
                    key.n(),
                    a.ctx().m()
                )));
            }
            Ok(invariant_coordinates(a)?.scalar(key))
        }
        DualIndex::Power(key) => Ok(power_coordinates(a, key.k())?.get(key).copied().unwrap_or(0)),
    }
}

/// `R*_q = (q - 2 sum R, r_1, ..., r_{m-1})` as a basis exponent sequence,
/// or `None` when the leading entry is negative.
pub fn dual_exponents(r: &[u32], q: i64) -> Option<Vec<u32>> {
    let lead = q - 2 * r.iter().map(|&x| x as i64).sum::<i64>();
    if r.is_empty() || lead < 0 {
        return None;
    }
    let mut h = vec![lead as u32];
    h.extend_from_slice(&r[..r.len() - 1]);
    Some(h)
}

/// `U_{k+1}` (`delta = 1`) or `V_{k+1}` (`delta = 0`) on `k + 1` pairs.
pub fn power_input(p: u32, k: usize, delta: u32) -> Result<Element> {
    let frame = Frame::standard(AlgebraContext::new(p, k + 1)?);
    match delta {
        1 => frame.u(k as u32 + 1),
        0 => frame.v(k as u32 + 1),
        _ => Err(AlgebraError::OutOfRange(format!("delta = {delta}"))),
    }
}

/// `Mt_{n,s}` (`delta = 1`, `-1 <= s < n`) or `Q_{n,s}` (`delta = 0`,
/// `0 <= s <= n`) on `n` pairs.
pub fn invariant_input(p: u32, n: usize, s: i32, delta: u32) -> Result<Element> {
    let frame = Frame::standard(AlgebraContext::new(p, n)?);
    match delta {
        1 => frame.mtilde(n as u32, s),
        0 if s >= 0 => frame.q(n as u32, s as u32),
        0 => Err(AlgebraError::OutOfRange(format!("Q_{{{n},{s}}}"))),
        _ => Err(AlgebraError::OutOfRange(format!("delta = {delta}"))),
    }
}

/// `(e, j)` of the power-side slot matching `s`: `u` for `s = -1`, else
/// `gamma_{p^s}(v)`.
pub fn slot_for(p: u32, s: i32) -> (u32, u32) {
    if s < 0 {
        (1, 0)
    } else {
        (0, p.pow(s as u32))
    }
}

/// Degree of `U^delta V^{1-delta}` on `k + 1` pairs: `(2 - delta) p^k`.
fn power_degree(p: u32, k: usize, delta: u32) -> i64 {
    (2 - delta as i64) * (p as i64).pow(k as u32)
}

/// One instance of the duality statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCase {
    pub delta: u32,
    pub e: u32,
    pub j: u32,
    /// `(S, R)` with `l(R) = k`, acting on the invariant side.
    pub st: MilnorIndex,
    /// `(S', R')` with `l(R') = n`, acting on the power side.
    pub st_prime: MilnorIndex,
}

impl DualityCase {
    pub fn k(&self) -> usize {
        self.st.r.len()
    }

    pub fn n(&self) -> usize {
        self.st_prime.r.len()
    }

    fn validate(&self) -> Result<()> {
        if self.delta > 1 || self.e > 1 {
            return Err(AlgebraError::OutOfRange(format!("delta = {}, e = {}", self.delta, self.e)));
        }
        let (k, n) = (self.k() as u32, self.n() as u32);
        if k == 0 || n == 0 {
            return Err(AlgebraError::OutOfRange("both R and R' need positive length".into()));
        }
        if self.st.s.iter().any(|&x| x >= k) || self.st_prime.s.iter().any(|&x| x >= n) {
            return Err(AlgebraError::OutOfRange(format!("exterior indices outside the blocks in {self:?}")));
        }
        Ok(())
    }

    /// The unique `s` in `[-delta, n - delta]` with `e + 2j = -[-2p^s]`.
    pub fn matched_s(&self, p: u32) -> Option<i32> {
        let target = (self.e + 2 * self.j) as i64;
        let lo = -(self.delta as i32);
        let hi = self.n() as i32 - self.delta as i32;
        (lo..=hi).find(|&s| -bracket_neg(p, s) == target)
    }

    /// `sigma = r(S,R) + r(S',R') + s + delta + (t + [-2p^s]) t' + n h k delta`
    /// mod 2.
    pub fn sigma(&self, p: u32, s: i32) -> u32 {
        let r_sr = seq_stats(&self.st.s, &self.st.r, 0, p).r_sr as i64;
        let r_sr2 = seq_stats(&self.st_prime.s, &self.st_prime.r, 0, p).r_sr as i64;
        let t = self.st.s.len() as i64;
        let t2 = self.st_prime.s.len() as i64;
        let h = (p as i64 - 1) / 2;
        let total = r_sr
            + r_sr2
            + s as i64
            + self.delta as i64
            + (t + bracket_neg(p, s)) * t2
            + self.n() as i64 * h * self.k() as i64 * self.delta as i64;
        total.rem_euclid(2) as u32
    }

    /// Power-side dual index `mt_S qt_{R*} (x) u^e gamma_j(v)`, or `None`
    /// when `R*` has a negative leading entry.
    pub fn lhs_index(&self, p: u32) -> Result<Option<PowerKey>> {
        let q = power_degree(p, self.n(), self.delta) - (self.e + 2 * self.j) as i64 - self.st.s.len() as i64;
        match dual_exponents(&self.st.r, q) {
            Some(h) => Ok(Some(PowerKey::new(BasisKey::new(self.st.s.clone(), h)?, self.e, self.j)?)),
            None => Ok(None),
        }
    }

    /// Invariant-side dual index `mt_{S'} qt_{R'*}`, or `None` when `R'*`
    /// has a negative leading entry.
    pub fn rhs_index(&self, p: u32) -> Result<Option<BasisKey>> {
        let q = power_degree(p, self.k(), self.delta) - self.st_prime.s.len() as i64;
        match dual_exponents(&self.st_prime.r, q) {
            Some(h) => Ok(Some(BasisKey::new(self.st_prime.s.clone(), h)?)),
            None => Ok(None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub case: DualityCase,
    /// `s` with `e + 2j = -[-2p^s]`, if any.
    pub s: Option<i32>,
    pub sigma: Option<u32>,
    pub lhs: u32,
    pub rhs: u32,
    pub equal: bool,
}

/// Evaluates both sides of the duality statement. Fails with
/// `Inadmissible` when `(S', R')` is inadmissible for `U^delta V^{1-delta}`.
pub fn duality_check(case: &DualityCase, p: u32) -> Result<DualityReport> {
    case.validate()?;
    let (n, k) = (case.n(), case.k());
    let input = power_input(p, k, case.delta)?;
    let image = milnor_st(&case.st_prime, &input)?;
    let lhs = match case.lhs_index(p)? {
        Some(key) => pair(&image, &DualIndex::Power(key))?,
        None => 0,
    };
    let Some(s) = case.matched_s(p) else {
        return Ok(DualityReport { case: case.clone(), s: None, sigma: None, lhs, rhs: 0, equal: lhs == 0 });
    };
    let sigma = case.sigma(p, s);
    let target = invariant_input(p, n, s, case.delta)?;
    let rhs_raw = match (case.rhs_index(p)?, milnor_st(&case.st, &target)) {
        (Some(key), Ok(value)) => pair(&value, &DualIndex::Invariant(key))?,
        (None, _) | (_, Err(AlgebraError::Inadmissible(..))) => 0,
        (_, Err(e)) => return Err(e),
    };
    let f = crate::field::PrimeField::new(p)?;
    let rhs = f.mul(f.sign(sigma as u64), rhs_raw);
    Ok(DualityReport { case: case.clone(), s: Some(s), sigma: Some(sigma), lhs, rhs, equal: lhs == rhs })
}

fn constant(p: u32, c: u32) -> Result<Element> {
    Ok(Element::monomial(AlgebraContext::new(p, 0)?, c, Monomial::ONE))
}

/// `St^{S,R}(Mt_{n,s}^delta Q_{n,s}^{1-delta})` written as
/// `sum (-1)^sigma C_{S',R'} Mt_{S'} Qt^{R'*}`, with each `C_{S',R'}` read off
/// from `St^{S',R'}(U_{k+1}^delta V_{k+1}^{1-delta})`.
pub fn invariant_side_expand(st: &MilnorIndex, s: i32, delta: u32, n: usize, p: u32) -> Result<InvariantExpansion> {
    let k = st.r.len();
    let lo = -(delta as i32);
    if s < lo || s > n as i32 - delta as i32 {
        return Err(AlgebraError::OutOfRange(format!("s = {s} for delta = {delta}, n = {n}")));
    }
    let (e, j) = slot_for(p, s);
    let x_ctx = AlgebraContext::new(p, 0)?;
    let mut terms = BTreeMap::new();
    let input = power_input(p, k, delta)?;
    for (st_prime, image) in milnor_table(n, &input)? {
        let case = DualityCase { delta, e, j, st: st.clone(), st_prime };
        case.validate()?;
        let Some(key) = case.lhs_index(p)? else { continue };
        let c = pair(&image, &DualIndex::Power(key))?;
        if c == 0 {
            continue;
        }
        let target = case.rhs_index(p)?.expect("admissible index from the table");
        let f = x_ctx.field();
        terms.insert(target, constant(p, f.mul(f.sign(case.sigma(p, s) as u64), c))?);
    }
    Ok(InvariantExpansion { n, x_ctx, terms })
}

/// `St^{S',R'}(U_{k+1}^delta V_{k+1}^{1-delta})` as one block expansion per
/// `s` in `[-delta, n - delta]`, the coefficient of `V_{k+1}^{p^s}` (of
/// `U_{k+1}` for `s = -1`).
pub fn power_side_expand(st_prime: &MilnorIndex, delta: u32, k: usize, p: u32) -> Result<BTreeMap<i32, InvariantExpansion>> {
    let n = st_prime.r.len();
    let x_ctx = AlgebraContext::new(p, 0)?;
    let f = x_ctx.field();
    let probe = DualityCase { delta, e: 0, j: 0, st: MilnorIndex { s: vec![], r: vec![0; k] }, st_prime: st_prime.clone() };
    probe.validate()?;
    let Some(dual) = probe.rhs_index(p)? else {
        return Err(AlgebraError::Inadmissible(st_prime.to_string(), power_degree(p, k, delta) as u32));
    };
    let mut out = BTreeMap::new();
    for s in -(delta as i32)..=(n as i32 - delta as i32) {
        let (e, j) = slot_for(p, s);
        let target = invariant_input(p, n, s, delta)?;
        let mut terms = BTreeMap::new();
        for (st, image) in milnor_table(k, &target)? {
            let c = pair(&image, &DualIndex::Invariant(dual.clone()))?;
            if c == 0 {
                continue;
            }
            let case = DualityCase { delta, e, j, st, st_prime: st_prime.clone() };
            let key = case.lhs_index(p)?.expect("admissible index from the table").block;
            terms.insert(key, constant(p, f.mul(f.sign(case.sigma(p, s) as u64), c))?);
        }
        out.insert(s, InvariantExpansion { n: k, x_ctx, terms });
    }
    Ok(out)
}

/// `sum_s expansion_s V_{k+1}^{p^s}` on `k + 1` pairs, with `U_{k+1}` in
/// place of `V_{k+1}^{1/p}`.
pub fn assemble_power_side(parts: &BTreeMap<i32, InvariantExpansion>, k: usize, p: u32) -> Result<Element> {
    let ctx = AlgebraContext::new(p, k + 1)?;
    let frame = Frame::standard(ctx);
    let map: Vec<usize> = (0..k).collect();
    let mut out = Element::zero(ctx);
    for (&s, part) in parts {
        let slot = if s < 0 { frame.u(k as u32 + 1)? } else { frame.v(k as u32 + 1)?.pow((p as u64).pow(s as u32))? };
        let block = part.reassemble()?.relabel(ctx, &map)?;
        out = out.try_add(&block.try_mul(&slot)?)?;
    }
    Ok(out)
}

/// Whether the invariant-side expansion reassembles to the Milnor
/// operation it describes.
pub fn invariant_side_check(st: &MilnorIndex, s: i32, delta: u32, n: usize, p: u32) -> Result<bool> {
    let expansion = invariant_side_expand(st, s, delta, n, p)?;
    let direct = match milnor_st(st, &invariant_input(p, n, s, delta)?) {
        Ok(v) => v,
        Err(AlgebraError::Inadmissible(..)) => Element::zero(AlgebraContext::new(p, n)?),
        Err(e) => return Err(e),
    };
    Ok(expansion.reassemble()? == direct)
}

/// Whether the power-side expansion assembles to the Milnor
/// operation it describes.
pub fn power_side_check(st_prime: &MilnorIndex, delta: u32, k: usize, p: u32) -> Result<bool> {
    let parts = power_side_expand(st_prime, delta, k, p)?;
    let direct = milnor_st(st_prime, &power_input(p, k, delta)?)?;
    Ok(assemble_power_side(&parts, k, p)? == direct)
}

/// Sequences of length `len` with entries summing to at most `total`.
fn bounded_sequences(len: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::new();
        for v in out {
            let used: u32 = v.iter().sum();
            for x in 0..=total - used {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn subsets(n: usize) -> Vec<Vec<u32>> {
    (0u32..1 << n).map(|mask| (0..n as u32).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

/// Milnor indices `(S, R)` with `l(R) = len`, `S` inside `[0, len)`,
/// admissible in degree `q` and adding at most `budget` to the degree.
pub fn admissible_indices(p: u32, len: usize, q: i64, budget: u64) -> Vec<MilnorIndex> {
    let mut out = Vec::new();
    if q < 0 {
        return out;
    }
    for s in subsets(len) {
        let room = q - s.len() as i64;
        if room < 0 {
            continue;
        }
        for r in bounded_sequences(len, (room / 2) as u32) {
            let idx = MilnorIndex { s: s.clone(), r };
            if idx.degree(p) <= budget {
                out.push(idx);
            }
        }
    }
    out
}

/// Every duality case at `p` for the given `(n, k)` with both operations
/// landing in degree at most `max_degree` and with an existing power-side
/// dual index.
pub fn duality_grid(p: u32, n: usize, k: usize, max_degree: u64) -> Vec<DualityCase> {
    let mut out = Vec::new();
    for delta in 0..=1u32 {
        let qk = power_degree(p, k, delta);
        let primes = admissible_indices(p, n, qk, max_degree.saturating_sub(qk as u64));
        for e in 0..=1u32 {
            for j in 0..=p {
                let qn = power_degree(p, n, delta) - (e + 2 * j) as i64;
                if qn < 0 {
                    continue;
                }
                for st in admissible_indices(p, k, qn, max_degree.saturating_sub(qn as u64)) {
                    for st_prime in &primes {
                        out.push(DualityCase { delta, e, j, st: st.clone(), st_prime: st_prime.clone() });
                    }
                }
            }
        }
    }
    out
}

/// Runs `duality_check` over `cases` in parallel, keeping input order.
pub fn run_duality(cases: &[DualityCase], p: u32) -> Vec<Result<DualityReport>> {
    cases.par_iter().map(|c| duality_check(c, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &[u32], r: &[u32]) -> MilnorIndex {
        MilnorIndex::new(s.to_vec(), r.to_vec()).unwrap()
    }

    #[test]
    fn pairing_is_dual_to_the_basis() {
        let p = 3;
        for n in 1..=2 {
            for d in 0..=20 {
                let keys = basis_keys(p, n, d);
                for a in &keys {
                    let elem = a.element(p).unwrap();
                    for b in &keys {
                        let want = u32::from(a == b);
                        assert_eq!(pair(&elem, &DualIndex::Invariant(b.clone())).unwrap(), want, "{a} vs {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn power_side_pairing() {
        let p = 3;
        let v2 = power_input(p, 1, 0).unwrap();
        let sq = v2.pow(2).unwrap();
        let key = PowerKey::new(BasisKey::new(vec![], vec![0]).unwrap(), 0, 2).unwrap();
        assert_eq!(pair(&sq, &DualIndex::Power(key)).unwrap(), 1);
        let other = PowerKey::new(BasisKey::new(vec![], vec![0]).unwrap(), 0, 1).unwrap();
        assert_eq!(pair(&sq, &DualIndex::Power(other)).unwrap(), 0);
        for d in 0..=15 {
            let keys = power_keys(p, 1, d);
            for a in &keys {
                let elem = a.element(p).unwrap();
                let exp = power_expansion(&elem, 1).unwrap();
                assert_eq!(exp.len(), 1);
                assert_eq!(exp.get(a), Some(&1));
            }
        }
    }

    #[test]
    fn matched_slot() {
        let case = DualityCase { delta: 1, e: 1, j: 0, st: idx(&[], &[0]), st_prime: idx(&[], &[0]) };
        assert_eq!(case.matched_s(3), Some(-1));
        let case = DualityCase { delta: 0, e: 0, j: 3, ..case };
        assert_eq!(case.matched_s(3), Some(1));
        let case = DualityCase { j: 2, ..case };
        assert_eq!(case.matched_s(3), None);
    }

    #[test]
    fn small_duality_cases() {
        for (n, k) in [(1, 1), (2, 1), (1, 2)] {
            for case in duality_grid(3, n, k, 20) {
                let report = duality_check(&case, 3).unwrap();
                assert!(report.equal, "{report:?}");
            }
        }
    }

    #[test]
    fn both_expansions_reassemble() {
        assert!(invariant_side_check(&idx(&[], &[1]), 0, 1, 1, 3).unwrap());
        assert!(invariant_side_check(&idx(&[0], &[0]), -1, 1, 1, 3).unwrap());
        assert!(invariant_side_check(&idx(&[], &[2]), 0, 0, 1, 3).unwrap());
        assert!(power_side_check(&idx(&[], &[1]), 1, 1, 3).unwrap());
        assert!(power_side_check(&idx(&[0], &[1]), 0, 1, 3).unwrap());
    }
}
