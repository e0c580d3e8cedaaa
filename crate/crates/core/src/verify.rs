//! Verification suites. Every cell compares two independently computed
//! values and ends as PASS, FAIL or SKIP; randomized cells draw from a
//! ChaCha stream fixed by the configured seed, so reruns are identical.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::closed_forms::{
    st_on_one_pair, bracket_identities, st_on_u2_with, st_on_v2, power_on_u, power_on_m_with, power_on_v, power_on_q,
    Reading, V2Signs,
};
use crate::combinatorics::{mu, multinomial, p_adic_digits, MilnorIndex};
use crate::duality::{
    admissible_indices, assemble_power_side, invariant_side_check, invariant_side_expand, power_side_expand, duality_grid,
    duality_check, DualityCase,
};
use crate::element::{determinant, AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::expansion::{milnor_st, reassemble_power_map};
use crate::invariants::{act, all_invertible, gl_generators, is_invariant, matrix_det, transvections, Frame, InvariantId};
use crate::monomial::Monomial;
use crate::render::{from_json, parse, to_json, to_text};
use crate::steenrod::{bockstein, compose_check, d_star_p, p_power};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Core,
    Invariants,
    Steenrod,
    ClosedForms,
    Duality,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Core, Suite::Invariants, Suite::Steenrod, Suite::ClosedForms, Suite::Duality];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Invariants => "invariants",
            Suite::Steenrod => "steenrod",
            Suite::ClosedForms => "closed-forms",
            Suite::Duality => "duality",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| AlgebraError::OutOfRange(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail {
        expected: String,
        actual: String,
    },
    Skip {
        reason: String,
    },
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail { .. } => "FAIL",
            Status::Skip { .. } => "SKIP",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cell {
    pub suite: Suite,
    pub check: String,
    pub params: Value,
    #[serde(flatten)]
    pub status: Status,
}

/// Mismatch count of the truncated form of a formula over the cells where its
/// completed form was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReadingSummary {
    pub formula: String,
    pub reading: String,
    pub cells: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub suites: Vec<Suite>,
    pub summary: Summary,
    pub cells: Vec<Cell>,
    pub readings: Vec<ReadingSummary>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub p: u32,
    pub max_n: usize,
    pub seed: u64,
    /// Randomized cases per property cell.
    pub cases: usize,
    /// Cells whose output degree holds more raw monomials than this are skipped.
    pub budget: u64,
    /// Degree cap for the duality grid.
    pub max_degree: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { p: 3, max_n: 2, seed: 0x5eed_2024, cases: 1000, budget: 200_000, max_degree: 40 }
    }
}

/// Number of monomials of degree `d` on `m` pairs.
pub fn monomial_count(m: usize, d: u64) -> u128 {
    fn binom(n: u128, k: u128) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
    }
    if m == 0 {
        return u128::from(d == 0);
    }
    // t exterior generators, the remaining degree spread over m polynomial ones
    (0..=(m as u64).min(d))
        .filter(|t| (d - t).is_multiple_of(2))
        .map(|t| binom(m as u128, t as u128) * binom((d - t) as u128 / 2 + m as u128 - 1, m as u128 - 1))
        .sum()
}

enum Outcome {
    Pass,
    Fail(String, String),
    Skip(String),
}

fn same(expected: &Element, actual: &Element) -> Outcome {
    if expected == actual {
        Outcome::Pass
    } else {
        Outcome::Fail(to_text(expected), to_text(actual))
    }
}

fn truth(ok: bool, what: &str) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(what.to_string(), "violated".to_string())
    }
}

type Job = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Pending {
    suite: Suite,
    check: String,
    params: Value,
    job: Job,
}

fn pending(suite: Suite, check: &str, params: Value, job: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Pending {
    Pending { suite, check: check.to_string(), params, job: Box::new(job) }
}

fn finish(p: Pending) -> Cell {
    let status = match (p.job)() {
        Ok(Outcome::Pass) => Status::Pass,
        Ok(Outcome::Fail(expected, actual)) => Status::Fail { expected, actual },
        Ok(Outcome::Skip(reason)) => Status::Skip { reason },
        Err(e) => Status::Fail { expected: "a value".into(), actual: format!("error: {e}") },
    };
    Cell { suite: p.suite, check: p.check, params: p.params, status }
}

fn over_budget(cfg: &VerifyConfig, m: usize, degree: u64) -> Option<Outcome> {
    let count = monomial_count(m, degree);
    (count > cfg.budget as u128).then(|| Outcome::Skip(format!("budget: {count} monomials in degree {degree} on {m} pairs")))
}

/// Runs the selected suites. Cells are evaluated in parallel and reported
/// in a fixed order.
pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Result<Report> {
    AlgebraContext::new(cfg.p, 1)?;
    let mut jobs = Vec::new();
    let mut readings = Vec::new();
    for &suite in suites {
        match suite {
            Suite::Core => core_jobs(cfg, &mut jobs),
            Suite::Invariants => invariant_jobs(cfg, &mut jobs),
            Suite::Steenrod => steenrod_jobs(cfg, &mut jobs),
            Suite::ClosedForms => {
                closed_form_jobs(cfg, &mut jobs);
                readings.extend(truncated_readings(cfg));
            }
            Suite::Duality => duality_jobs(cfg, &mut jobs),
        }
    }
    let cells: Vec<Cell> = jobs.into_par_iter().map(finish).collect();
    let mut summary = Summary::default();
    for c in &cells {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail { .. } => summary.fail += 1,
            Status::Skip { .. } => summary.skip += 1,
        }
    }
    Ok(Report { config: cfg.clone(), suites: suites.to_vec(), summary, cells, readings })
}

// ---------------------------------------------------------------------------
// randomized elements

/// A random monomial of degree `d` on `m` pairs, if one exists.
pub fn random_monomial(rng: &mut impl Rng, m: usize, d: u32) -> Option<Monomial> {
    if m == 0 {
        return (d == 0).then_some(Monomial::ONE);
    }
    let choices: Vec<usize> = (0..=m.min(d as usize)).filter(|t| (d as usize - t).is_multiple_of(2)).collect();
    if choices.is_empty() {
        return None;
    }
    let t = choices[rng.random_range(0..choices.len())];
    let mut pool: Vec<usize> = (0..m).collect();
    let mut xs = Vec::with_capacity(t);
    for _ in 0..t {
        xs.push(pool.swap_remove(rng.random_range(0..pool.len())));
    }
    xs.sort_unstable();
    let mut ys = vec![0u32; m];
    for _ in 0..(d as usize - t) / 2 {
        ys[rng.random_range(0..m)] += 1;
    }
    Monomial::new(&xs, &ys).ok()
}

/// A random homogeneous element of degree `d` with at most `terms` terms.
pub fn random_element(rng: &mut impl Rng, ctx: AlgebraContext, d: u32, terms: usize) -> Element {
    let mut out = Element::zero(ctx);
    for _ in 0..terms {
        if let Some(m) = random_monomial(rng, ctx.m(), d) {
            out.add_monomial(rng.random_range(1..ctx.p()), m);
        }
    }
    out
}

/// A random pure polynomial of degree `2 d`.
pub fn random_polynomial(rng: &mut impl Rng, ctx: AlgebraContext, d: u32, terms: usize) -> Element {
    let mut out = Element::zero(ctx);
    for _ in 0..terms {
        let mut ys = vec![0u32; ctx.m()];
        for _ in 0..d {
            ys[rng.random_range(0..ctx.m())] += 1;
        }
        out.add_monomial(rng.random_range(1..ctx.p()), Monomial::new(&[], &ys).expect("fits"));
    }
    out
}

/// Result of one randomized property: cases run and the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyRun {
    pub name: String,
    pub cases: usize,
    pub failure: Option<String>,
}

type PropertyFn = fn(&mut ChaCha8Rng, u32) -> Result<Option<String>>;

/// Names of the randomized properties, in suite order.
pub const PROPERTIES: [&str; 12] = [
    "graded-commutativity",
    "associativity",
    "distributivity",
    "exact-division",
    "determinant-alternating",
    "parse-render-round-trip",
    "instability",
    "cartan",
    "bockstein-square",
    "bockstein-derivation",
    "power-map-sign",
    "degree-bookkeeping",
];

fn property_fn(name: &str) -> Option<(Suite, PropertyFn)> {
    Some(match name {
        "graded-commutativity" => (Suite::Core, prop_commutativity),
        "associativity" => (Suite::Core, prop_associativity),
        "distributivity" => (Suite::Core, prop_distributivity),
        "exact-division" => (Suite::Core, prop_exact_division),
        "determinant-alternating" => (Suite::Core, prop_determinant),
        "parse-render-round-trip" => (Suite::Core, prop_round_trip),
        "instability" => (Suite::Steenrod, prop_instability),
        "cartan" => (Suite::Steenrod, prop_cartan),
        "bockstein-square" => (Suite::Steenrod, prop_bockstein_square),
        "bockstein-derivation" => (Suite::Steenrod, prop_bockstein_derivation),
        "power-map-sign" => (Suite::Steenrod, prop_power_map_sign),
        "degree-bookkeeping" => (Suite::Steenrod, prop_degree),
        _ => return None,
    })
}

/// Runs the named property on `cases` random inputs at prime `p`.
pub fn run_property(name: &str, p: u32, cases: usize, seed: u64) -> Result<PropertyRun> {
    let (_, f) = property_fn(name).ok_or_else(|| AlgebraError::OutOfRange(format!("unknown property {name:?}")))?;
    let salt = PROPERTIES.iter().position(|&x| x == name).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (salt << 32) ^ p as u64);
    for i in 0..cases {
        if let Some(msg) = f(&mut rng, p)? {
            return Ok(PropertyRun { name: name.into(), cases: i + 1, failure: Some(msg) });
        }
    }
    Ok(PropertyRun { name: name.into(), cases, failure: None })
}

fn random_ctx(rng: &mut impl Rng, p: u32, max_m: usize) -> AlgebraContext {
    AlgebraContext::new(p, rng.random_range(1..=max_m)).expect("valid prime")
}

fn prop_commutativity(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let (da, db) = (rng.random_range(0..8), rng.random_range(0..8));
    let a = random_element(rng, ctx, da, 4);
    let b = random_element(rng, ctx, db, 4);
    let ab = a.try_mul(&b)?;
    let ba = b.try_mul(&a)?.scalar_mul(ctx.field().sign((da * db) as u64));
    Ok((ab != ba).then(|| format!("a = {}, b = {}", to_text(&a), to_text(&b))))
}

fn prop_associativity(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let [a, b, c] = [0; 3].map(|_| {
        let d = rng.random_range(0..6);
        random_element(rng, ctx, d, 3)
    });
    let left = a.try_mul(&b)?.try_mul(&c)?;
    let right = a.try_mul(&b.try_mul(&c)?)?;
    Ok((left != right).then(|| format!("a = {}, b = {}, c = {}", to_text(&a), to_text(&b), to_text(&c))))
}

fn prop_distributivity(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let d = rng.random_range(0..6);
    let a_deg = rng.random_range(0..6);
    let a = random_element(rng, ctx, a_deg, 3);
    let b = random_element(rng, ctx, d, 3);
    let c = random_element(rng, ctx, d, 3);
    let left = a.try_mul(&b.try_add(&c)?)?;
    let right = a.try_mul(&b)?.try_add(&a.try_mul(&c)?)?;
    Ok((left != right).then(|| format!("a = {}, b = {}, c = {}", to_text(&a), to_text(&b), to_text(&c))))
}

fn prop_exact_division(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let q_deg = rng.random_range(0..5);
    let q = random_polynomial(rng, ctx, q_deg, 3);
    let b_deg = rng.random_range(0..4);
    let mut b = random_polynomial(rng, ctx, b_deg, 3);
    if b.is_zero() {
        b = Element::one(ctx);
    }
    let prod = q.try_mul(&b)?;
    let back = prod.exact_div(&b)?;
    Ok((back != q).then(|| format!("q = {}, b = {}", to_text(&q), to_text(&b))))
}

fn prop_determinant(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let k = rng.random_range(2..=3usize);
    let ctx = AlgebraContext::new(p, k)?;
    // an odd row is kept away from the two rows that get swapped and copied
    let odd_row = k == 3 && rng.random_bool(0.5);
    let mut rows: Vec<Vec<Element>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|_| {
                    if odd_row && i == 0 {
                        random_element(rng, ctx, 1, 2)
                    } else {
                        random_polynomial(rng, ctx, 1 + i as u32, 2)
                    }
                })
                .collect()
        })
        .collect();
    let d = determinant(&rows)?;
    // swapping two even rows negates the determinant
    let (i, j) = (k - 2, k - 1);
    rows.swap(i, j);
    let swapped = determinant(&rows)?;
    if swapped != d.neg() {
        return Ok(Some(format!("swap of rows {i},{j} on a {k}x{k} matrix")));
    }
    rows[i] = rows[j].clone();
    let repeated = determinant(&rows)?;
    Ok((!repeated.is_zero()).then(|| format!("equal rows {i},{j} on a {k}x{k} matrix")))
}

fn prop_round_trip(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 4);
    let a_deg = rng.random_range(0..12);
    let a = random_element(rng, ctx, a_deg, 5);
    let text = to_text(&a);
    let back = parse(&text, p, Some(ctx.m()))?;
    let json_back = from_json(&to_json(&a))?;
    Ok((back != a || json_back != a).then_some(text))
}

fn prop_instability(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let d = rng.random_range(0..10);
    let a = random_element(rng, ctx, d, 4);
    let r = (d / 2 + 1 + rng.random_range(0..3)) as usize;
    let v = p_power(r, &a)?;
    Ok((!v.is_zero()).then(|| format!("P^{r}({})", to_text(&a))))
}

fn prop_cartan(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let a_deg = rng.random_range(0..8);
    let a = random_element(rng, ctx, a_deg, 3);
    let b_deg = rng.random_range(0..8);
    let b = random_element(rng, ctx, b_deg, 3);
    let r = rng.random_range(0..6usize);
    let whole = p_power(r, &a.try_mul(&b)?)?;
    let mut split = Element::zero(ctx);
    for i in 0..=r {
        split = split.try_add(&p_power(i, &a)?.try_mul(&p_power(r - i, &b)?)?)?;
    }
    Ok((whole != split).then(|| format!("r = {r}, a = {}, b = {}", to_text(&a), to_text(&b))))
}

fn prop_bockstein_square(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 4);
    let a_deg = rng.random_range(0..10);
    let a = random_element(rng, ctx, a_deg, 5);
    Ok((!bockstein(&bockstein(&a)?)?.is_zero()).then(|| to_text(&a)))
}

fn prop_bockstein_derivation(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let du = rng.random_range(0..7);
    let u = random_element(rng, ctx, du, 3);
    let v_deg = rng.random_range(0..7);
    let v = random_element(rng, ctx, v_deg, 3);
    let left = bockstein(&u.try_mul(&v)?)?;
    let right = bockstein(&u)?
        .try_mul(&v)?
        .try_add(&u.try_mul(&bockstein(&v)?)?.scalar_mul(ctx.field().sign(du as u64)))?;
    Ok((left != right).then(|| format!("u = {}, v = {}", to_text(&u), to_text(&v))))
}

fn prop_power_map_sign(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let m = rng.random_range(1..=2usize);
    let ctx = AlgebraContext::new(p, m)?;
    let n = 1;
    let max = if p == 3 { 4 } else { 2 };
    let (q, r) = (rng.random_range(0..=max), rng.random_range(0..=max));
    let u = random_element(rng, ctx, q, 2);
    let v = random_element(rng, ctx, r, 2);
    let f = ctx.field();
    let whole = d_star_p(n, &u.try_mul(&v)?)?;
    let parts = d_star_p(n, &u)?.try_mul(&d_star_p(n, &v)?)?;
    let sign = f.sign(n as u64 * f.half() as u64 * q as u64 * r as u64);
    Ok((whole != parts.scalar_mul(sign)).then(|| format!("u = {}, v = {}", to_text(&u), to_text(&v))))
}

fn prop_degree(rng: &mut ChaCha8Rng, p: u32) -> Result<Option<String>> {
    let ctx = random_ctx(rng, p, 3);
    let d = rng.random_range(0..10);
    let a = random_element(rng, ctx, d, 4);
    if a.is_zero() {
        return Ok(None);
    }
    let r = rng.random_range(0..=d as usize / 2);
    let v = p_power(r, &a)?;
    if let Some(got) = v.degree() {
        if got as u64 != d as u64 + 2 * r as u64 * (p as u64 - 1) {
            return Ok(Some(format!("deg P^{r}({}) = {got}", to_text(&a))));
        }
    }
    if v.degree().is_none() && !v.is_zero() {
        return Ok(Some(format!("P^{r}({}) is inhomogeneous", to_text(&a))));
    }
    let b_deg = rng.random_range(0..6);
    let b = random_element(rng, ctx, b_deg, 3);
    let ab = a.try_mul(&b)?;
    if let (Some(x), Some(y)) = (ab.degree(), b.degree()) {
        if x != d + y {
            return Ok(Some(format!("deg of a product: {x} vs {d} + {y}")));
        }
    }
    if p == 3 && d <= 4 && ctx.m() <= 2 {
        let img = d_star_p(1, &a)?;
        if let Some(x) = img.degree() {
            if x != d * p {
                return Ok(Some(format!("deg d_1 P_1({}) = {x}", to_text(&a))));
            }
        }
    }
    Ok(None)
}

fn property_jobs(suite: Suite, cfg: &VerifyConfig, jobs: &mut Vec<Pending>) {
    for name in PROPERTIES {
        let Some((owner, _)) = property_fn(name) else { continue };
        if owner != suite {
            continue;
        }
        let (p, cases, seed) = (cfg.p, cfg.cases, cfg.seed);
        jobs.push(pending(suite, name, json!({ "p": p, "cases": cases, "seed": seed }), move || {
            let run = run_property(name, p, cases, seed)?;
            Ok(match run.failure {
                None => Outcome::Pass,
                Some(msg) => Outcome::Fail(format!("property holds on {cases} cases"), format!("case {}: {msg}", run.cases)),
            })
        }));
    }
}

// ---------------------------------------------------------------------------
// suites

fn core_jobs(cfg: &VerifyConfig, jobs: &mut Vec<Pending>) {
    property_jobs(Suite::Core, cfg, jobs);
    let p = cfg.p;
    jobs.push(pending(Suite::Core, "multinomial-vs-expansion", json!({ "p": p, "max_b": 6, "max_len": 3 }), move || {
        for len in 1..=3usize {
            let ctx = AlgebraContext::new(p, len)?;
            let f = ctx.field();
            let mut base = Element::one(ctx);
            for i in 0..len {
                base = base + Element::y(ctx, i);
            }
            for b in 0..=6u32 {
                let expanded = base.pow(b as u64)?;
                for m in expanded_monomials(len, b) {
                    let r: Vec<i64> = (0..len).map(|i| m.y_exp(i) as i64).collect();
                    let want = expanded.coefficient(&m);
                    let got = multinomial(b as i64, &r, &f);
                    if want != got {
                        return Ok(Outcome::Fail(format!("{want}"), format!("multinomial({b}, {r:?}) = {got}")));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    }));
    jobs.push(pending(Suite::Core, "p-adic-round-trip", json!({ "p": p, "below": (p as u64).pow(4) }), move || {
        for r in 0..(p as u64).pow(4) {
            let d = p_adic_digits(r, p);
            let back: u64 = (0..8).map(|i| d.get(i) as u64 * (p as u64).pow(i as u32)).sum();
            if back != r || (0..8).any(|i| d.get(i) >= p) {
                return Ok(Outcome::Fail(r.to_string(), back.to_string()));
            }
        }
        Ok(Outcome::Pass)
    }));
    jobs.push(pending(Suite::Core, "mu-identity", json!({ "p": p, "max_k": 4 }), move || {
        let f = AlgebraContext::new(p, 1)?.field();
        let inv = f.inv(f.factorial(f.half() as u64)).expect("unit");
        for k in 0..=4u32 {
            let got = f.mul(inv, mu((p as u64).pow(k), 1, &f));
            let want = f.sign(f.half() as u64 * k as u64);
            if got != want {
                return Ok(Outcome::Fail(format!("k = {k}: {want}"), got.to_string()));
            }
        }
        Ok(Outcome::Pass)
    }));
}

fn expanded_monomials(len: usize, b: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut ys = vec![0u32; len];
    fn walk(i: usize, rest: u32, ys: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == ys.len() {
            out.push(Monomial::new(&[], ys).expect("fits"));
            return;
        }
        for e in 0..=rest {
            ys[i] = e;
            walk(i + 1, rest - e, ys, out);
        }
        ys[i] = 0;
    }
    walk(0, b, &mut ys, &mut out);
    out
}

fn invariant_jobs(cfg: &VerifyConfig, jobs: &mut Vec<Pending>) {
    let p = cfg.p;
    let budget = cfg.clone();
    let guard = move |n: usize, d: u64| over_budget(&budget, n, d);
    for n in 1..=cfg.max_n as u32 {
        let nn = n as usize;
        let mut ids = vec![InvariantId::Ltilde { n }, InvariantId::U { k: n }, InvariantId::V { k: n }];
        ids.extend((0..=n).map(|s| InvariantId::Q { n, s }));
        ids.extend((-1..n as i32).map(|s| InvariantId::Mtilde { n, s }));
        for id in ids {
            let g = guard.clone();
            let params = json!({ "p": p, "id": id.to_string() });
            jobs.push(pending(Suite::Invariants, "degree", params, move || {
                if let Some(skip) = g(nn, id.degree(p)) {
                    return Ok(skip);
                }
                let e = Frame::standard(AlgebraContext::new(p, nn)?).get(&id)?;
                let want = id.degree(p);
                Ok(match e.degree() {
                    Some(d) if d as u64 == want => Outcome::Pass,
                    other => Outcome::Fail(want.to_string(), format!("{other:?}")),
                })
            }));
        }
        for s in 0..=n {
            let g = guard.clone();
            jobs.push(pending(Suite::Invariants, "dickson-recursion", json!({ "p": p, "n": n, "s": s }), move || {
                if let Some(skip) = g(nn, 2 * ((p as u64).pow(n) - (p as u64).pow(s))) {
                    return Ok(skip);
                }
                let fr = Frame::standard(AlgebraContext::new(p, nn)?);
                Ok(same(&fr.q(n, s)?, &fr.q_recursion(n, s)?))
            }));
            let g = guard.clone();
            jobs.push(pending(Suite::Invariants, "gl-invariance", json!({ "p": p, "n": n, "s": s }), move || {
                if let Some(skip) = g(nn, 2 * ((p as u64).pow(n) - (p as u64).pow(s))) {
                    return Ok(skip);
                }
                let q = Frame::standard(AlgebraContext::new(p, nn)?).q(n, s)?;
                for a in gl_generators(nn, p) {
                    if !is_invariant(&q, &a)? {
                        return Ok(Outcome::Fail("invariant".into(), format!("moved by {a:?}")));
                    }
                }
                Ok(Outcome::Pass)
            }));
        }
        let g = guard.clone();
        jobs.push(pending(Suite::Invariants, "linear-form-product", json!({ "p": p, "k": n }), move || {
            if let Some(skip) = g(nn, 2 * (p as u64).pow(n - 1)) {
                return Ok(skip);
            }
            let fr = Frame::standard(AlgebraContext::new(p, nn)?);
            Ok(same(&fr.v(n)?, &fr.v_product(n)?))
        }));
        let g = guard.clone();
        jobs.push(pending(Suite::Invariants, "dickson-ends", json!({ "p": p, "n": n }), move || {
            if let Some(skip) = g(nn, 2 * ((p as u64).pow(n) - 1)) {
                return Ok(skip);
            }
            let fr = Frame::standard(AlgebraContext::new(p, nn)?);
            let ends = fr.q(n, 0)? == fr.ltilde(n)?.pow(2)? && fr.q(n, n)? == Element::one(fr.ctx());
            Ok(truth(ends, "Q_{n,0} = Lt_n^2 and Q_{n,n} = 1"))
        }));
        let g = guard.clone();
        jobs.push(pending(Suite::Invariants, "sl-invariance", json!({ "p": p, "n": n }), move || {
            if let Some(skip) = g(nn, (p as u64).pow(n) - 1) {
                return Ok(skip);
            }
            let fr = Frame::standard(AlgebraContext::new(p, nn)?);
            let mut targets = vec![fr.ltilde(n)?];
            for s in 0..n as i32 {
                targets.push(fr.mtilde(n, s)?);
            }
            for a in transvections(nn) {
                for t in &targets {
                    if !is_invariant(t, &a)? {
                        return Ok(Outcome::Fail("invariant".into(), format!("{} moved by {a:?}", to_text(t))));
                    }
                }
            }
            Ok(Outcome::Pass)
        }));
    }
    if p == 3 && cfg.max_n >= 2 {
        jobs.push(pending(Suite::Invariants, "gl2-exhaustive", json!({ "p": 3, "n": 2, "matrices": 48 }), move || {
            let fr = Frame::standard(AlgebraContext::new(3, 2)?);
            let f = fr.ctx().field();
            let lt = fr.ltilde(2)?;
            let qs = [fr.q(2, 0)?, fr.q(2, 1)?];
            for a in all_invertible(2, 3) {
                if qs.iter().any(|q| !is_invariant(q, &a).unwrap_or(false)) {
                    return Ok(Outcome::Fail("Q_{2,s} invariant".into(), format!("moved by {a:?}")));
                }
                let scale = f.pow(matrix_det(&a, 3), f.half() as u64);
                if act(&lt, &a)? != lt.scalar_mul(scale) {
                    return Ok(Outcome::Fail("Lt_2 scaled by det^h".into(), format!("{a:?}")));
                }
            }
            Ok(Outcome::Pass)
        }));
    }
}

fn steenrod_jobs(cfg: &VerifyConfig, jobs: &mut Vec<Pending>) {
    property_jobs(Suite::Steenrod, cfg, jobs);
    let p = cfg.p;
    let one = AlgebraContext::new(p, 1).expect("prime checked");
    let two = AlgebraContext::new(p, 2).expect("prime checked");
    let x = Element::x(one, 0);
    let y = Element::y(one, 0);
    let mut inputs = vec![
        ("x", x.clone()),
        ("y", y.clone()),
        ("y^2", y.pow(2).expect("poly")),
        ("xy", x.try_mul(&y).expect("same ctx")),
        ("y^3", y.pow(3).expect("poly")),
    ];
    let fr = Frame::standard(two);
    inputs.push(("U_2", fr.u(2).expect("defined")));
    inputs.push(("V_2", fr.v(2).expect("defined")));
    for (name, a) in inputs.clone() {
        let q = a.degree().unwrap_or(0) as usize;
        let c = cfg.clone();
        jobs.push(pending(Suite::Steenrod, "milnor-vs-cartan", json!({ "p": p, "n": 1, "input": name }), move || {
            if let Some(skip) = over_budget(&c, a.ctx().m() + 1, (q * p as usize) as u64) {
                return Ok(skip);
            }
            for r in 0..=q / 2 {
                let st = milnor_st(&MilnorIndex::single(r as u32), &a)?;
                let pr = p_power(r, &a)?;
                if st != pr {
                    return Ok(Outcome::Fail(to_text(&pr), to_text(&st)));
                }
            }
            Ok(Outcome::Pass)
        }));
    }
    for n in 1..=cfg.max_n.min(2) {
        for (name, a) in inputs[..5].to_vec() {
            let c = cfg.clone();
            jobs.push(pending(Suite::Steenrod, "power-map-round-trip", json!({ "p": p, "n": n, "input": name }), move || {
                let d = a.degree().unwrap_or(0) as u64 * (p as u64).pow(n as u32);
                if let Some(skip) = over_budget(&c, n + 1, d) {
                    return Ok(skip);
                }
                let direct = d_star_p(n, &a)?;
                let rebuilt = reassemble_power_map(n, &a)?;
                Ok(same(&direct, &rebuilt))
            }));
        }
    }
    if cfg.max_n >= 2 {
        for (name, a) in inputs[..4].to_vec() {
            let c = cfg.clone();
            jobs.push(pending(Suite::Steenrod, "composition", json!({ "p": p, "n": 2, "input": name }), move || {
                let d = a.degree().unwrap_or(0) as u64 * (p as u64).pow(2);
                if let Some(skip) = over_budget(&c, 3, d) {
                    return Ok(skip);
                }
                for s in 0..=2 {
                    if !compose_check(s, 2, &a)? {
                        return Ok(Outcome::Fail("equal".into(), format!("differs at s = {s}")));
                    }
                }
                Ok(Outcome::Pass)
            }));
        }
    }
}

/// `(label, n or k, s, target element, closed-form evaluator)` for the sweep.
type SweepRow = (&'static str, u32, i32, usize, u64);

fn sweep_rows(p: u32, max_n: usize) -> Vec<SweepRow> {
    let pw = |e: u32| (p as u64).pow(e);
    let mut rows = Vec::new();
    for k in 0..max_n as u32 {
        rows.push(("P^r U_{k+1}", k, 0, k as usize + 1, pw(k)));
        rows.push(("P^r V_{k+1}", k, 0, k as usize + 1, 2 * pw(k)));
    }
    for n in 1..=max_n as u32 {
        for s in -1..n as i32 {
            let dim = if s < 0 { pw(n) - 1 } else { pw(n) - 2 * pw(s as u32) };
            rows.push(("P^r Mt_{n,s}", n, s, n as usize, dim));
        }
        for s in 0..=n as i32 {
            rows.push(("P^r Q_{n,s}", n, s, n as usize, 2 * (pw(n) - pw(s as u32))));
        }
    }
    rows
}

fn sweep_target(p: u32, label: &str, nk: u32, s: i32) -> Result<Element> {
    match label {
        "P^r U_{k+1}" => Frame::standard(AlgebraContext::new(p, nk as usize + 1)?).u(nk + 1),
        "P^r V_{k+1}" => Frame::standard(AlgebraContext::new(p, nk as usize + 1)?).v(nk + 1),
        "P^r Mt_{n,s}" => Frame::standard(AlgebraContext::new(p, nk as usize)?).mtilde(nk, s),
        _ => Frame::standard(AlgebraContext::new(p, nk as usize)?).q(nk, s as u32),
    }
}

fn sweep_closed(p: u32, label: &str, nk: u32, s: i32, r: u64, reading: Reading) -> Result<Element> {
    Ok(match label {
        "P^r U_{k+1}" => power_on_u(AlgebraContext::new(p, nk as usize + 1)?, r, nk)?.value,
        "P^r V_{k+1}" => power_on_v(AlgebraContext::new(p, nk as usize + 1)?, r, nk)?.value,
        "P^r Mt_{n,s}" => power_on_m_with(AlgebraContext::new(p, nk as usize)?, r, nk, s, reading)?.value,
        _ => power_on_q(AlgebraContext::new(p, nk as usize)?, r, nk, s as u32)?.value,
    })
}

/// Admissible Milnor indices on an element of degree `q` with `l(R) <= 2`
/// and entries `<= p`, for the two-pair formulas.
fn two_pair_indices(p: u32, q: i64, with_s: bool) -> Vec<MilnorIndex> {
    (1..=2usize)
        .flat_map(|len| admissible_indices(p, len, q, u64::MAX))
        .filter(|idx| idx.r.iter().all(|&x| x <= p) && (with_s || idx.s.is_empty()))
        .collect()
}

fn closed_form_jobs(cfg: &VerifyConfig, jobs: &mut Vec<Pending>) {
    let p = cfg.p;
    for (label, nk, s, m, dim) in sweep_rows(p, cfg.max_n) {
        for r in 0..=dim / 2 + 3 {
            let c = cfg.clone();
            let params = json!({ "p": p, "formula": label, "nk": nk, "s": s, "r": r });
            jobs.push(pending(Suite::ClosedForms, "oracle-sweep", params, move || {
                if let Some(skip) = over_budget(&c, m, dim + 2 * r * (p as u64 - 1)) {
                    return Ok(skip);
                }
                let target = sweep_target(p, label, nk, s)?;
                let oracle = p_power(r as usize, &target)?;
                Ok(same(&oracle, &sweep_closed(p, label, nk, s, r, Reading::Completed)?))
            }));
        }
    }
    let two = AlgebraContext::new(p, 2).expect("prime checked");
    for idx in two_pair_indices(p, p as i64, true) {
        let c = cfg.clone();
        let params = json!({ "p": p, "S": idx.s, "R": idx.r });
        jobs.push(pending(Suite::ClosedForms, "st-on-u2", params, move || {
            let d = (p as u64) * (p as u64).pow(idx.r.len() as u32);
            if let Some(skip) = over_budget(&c, 2 + idx.r.len(), d) {
                return Ok(skip);
            }
            let u2 = Frame::standard(two).u(2)?;
            match milnor_st(&idx, &u2) {
                Ok(oracle) => Ok(same(&oracle, &st_on_u2_with(two, &idx.s, &idx.r, Reading::Completed)?)),
                Err(AlgebraError::Inadmissible(..)) => Ok(Outcome::Skip("inadmissible index".into())),
                Err(e) => Err(e),
            }
        }));
    }
    for idx in two_pair_indices(p, 2 * p as i64, false) {
        let c = cfg.clone();
        let params = json!({ "p": p, "R": idx.r, "signs": V2Signs::RESOLVED });
        jobs.push(pending(Suite::ClosedForms, "st-on-v2", params, move || {
            let d = 2 * (p as u64) * (p as u64).pow(idx.r.len() as u32);
            if let Some(skip) = over_budget(&c, 2 + idx.r.len(), d) {
                return Ok(skip);
            }
            let v2 = Frame::standard(two).v(2)?;
            match milnor_st(&idx, &v2) {
                Ok(oracle) => Ok(same(&oracle, &st_on_v2(two, &idx.r, V2Signs::RESOLVED)?)),
                Err(AlgebraError::Inadmissible(..)) => Ok(Outcome::Skip("inadmissible index".into())),
                Err(e) => Err(e),
            }
        }));
    }
    for eps in 0..=1u32 {
        for b in 0..=6u64 {
            let params = json!({ "p": p, "eps": eps, "b": b });
            jobs.push(pending(Suite::ClosedForms, "st-on-one-pair", params, move || {
                let ctx = AlgebraContext::new(p, 1)?;
                let xs: &[usize] = if eps == 1 { &[0] } else { &[] };
                let a = Element::monomial(ctx, 1, Monomial::new(xs, &[b as u32])?);
                let q = a.degree().unwrap_or(0) as i64;
                for len in 1..=2usize {
                    for idx in admissible_indices(p, len, q, u64::MAX) {
                        let oracle = milnor_st(&idx, &a)?;
                        let closed = st_on_one_pair(p, &idx.s, &idx.r, eps, b)?;
                        if oracle != closed {
                            return Ok(Outcome::Fail(to_text(&oracle), format!("{idx}: {}", to_text(&closed))));
                        }
                    }
                }
                Ok(Outcome::Pass)
            }));
        }
    }
    for v in 0..=2u32 {
        for u in 0..=v {
            jobs.push(pending(Suite::ClosedForms, "bracket-identities", json!({ "p": p, "u": u, "v": v }), move || {
                let [(a, b), (c, d)] = bracket_identities(two, u, v)?;
                Ok(match (same(&a, &b), same(&c, &d)) {
                    (Outcome::Pass, Outcome::Pass) => Outcome::Pass,
                    (Outcome::Fail(x, y), _) | (_, Outcome::Fail(x, y)) => Outcome::Fail(x, y),
                    _ => Outcome::Pass,
                })
            }));
        }
    }
}

/// How often each truncated form disagrees with the oracle on the cells where
/// its completed form is checked.
pub fn truncated_readings(cfg: &VerifyConfig) -> Vec<ReadingSummary> {
    let p = cfg.p;
    let mut m_cells = 0;
    let mut m_bad = 0;
    for (label, nk, s, m, dim) in sweep_rows(p, cfg.max_n) {
        if label != "P^r Mt_{n,s}" {
            continue;
        }
        for r in 0..=dim / 2 + 3 {
            if over_budget(cfg, m, dim + 2 * r * (p as u64 - 1)).is_some() {
                continue;
            }
            let Ok(target) = sweep_target(p, label, nk, s) else { continue };
            let (Ok(oracle), Ok(short)) = (p_power(r as usize, &target), sweep_closed(p, label, nk, s, r, Reading::Truncated)) else {
                continue;
            };
            m_cells += 1;
            m_bad += usize::from(oracle != short);
        }
    }
    let two = AlgebraContext::new(p, 2).expect("prime checked");
    let (mut u_cells, mut u_bad, mut v_cells, mut v_bad) = (0, 0, 0, 0);
    if over_budget(cfg, 4, 2 * (p as u64).pow(3)).is_none() {
        let fr = Frame::standard(two);
        let (u2, v2) = (fr.u(2).expect("defined"), fr.v(2).expect("defined"));
        for idx in two_pair_indices(p, p as i64, true) {
            if let Ok(oracle) = milnor_st(&idx, &u2) {
                u_cells += 1;
                u_bad += usize::from(st_on_u2_with(two, &idx.s, &idx.r, Reading::Truncated).ok() != Some(oracle));
            }
        }
        for idx in two_pair_indices(p, 2 * p as i64, false) {
            if let Ok(oracle) = milnor_st(&idx, &v2) {
                v_cells += 1;
                v_bad += usize::from(st_on_v2(two, &idx.r, V2Signs::UNIFORM).ok() != Some(oracle));
            }
        }
    }
    vec![
        ReadingSummary { formula: "P^r Mt_{n,s}".into(), reading: "truncated".into(), cells: m_cells, mismatches: m_bad },
        ReadingSummary { formula: "St^{S,R} U_2".into(), reading: "truncated".into(), cells: u_cells, mismatches: u_bad },
        ReadingSummary { formula: "St^{R} V_2".into(), reading: "uniform signs".into(), cells: v_cells, mismatches: v_bad },
    ]
}

/// The `(n, k)` block sizes checked by the duality suite.
pub fn duality_blocks(max_n: usize) -> Vec<(usize, usize)> {
    [(1, 1), (1, 2), (2, 1)].into_iter().filter(|&(n, k)| n <= max_n && k <= max_n).collect()
}

fn duality_jobs(cfg: &VerifyConfig, jobs: &mut Vec<Pending>) {
    let p = cfg.p;
    let pw = |e: usize| (p as i64).pow(e as u32);
    for (n, k) in duality_blocks(cfg.max_n) {
        for case in duality_grid(p, n, k, cfg.max_degree) {
            let params = serde_json::to_value(&case).unwrap_or(Value::Null);
            jobs.push(pending(Suite::Duality, "duality", json!({ "p": p, "n": n, "k": k, "case": params }), move || {
                duality_outcome(&case, p)
            }));
        }
        for delta in 0..=1u32 {
            let lo = -(delta as i32);
            for s in lo..=(n as i32 - delta as i32) {
                let dim = (2 - delta as i64) * pw(n) + crate::closed_forms::bracket_neg(p, s);
                for st in admissible_indices(p, k, dim, cfg.max_degree.saturating_sub(dim as u64)) {
                    let params = json!({ "p": p, "n": n, "k": k, "delta": delta, "s": s, "S": st.s, "R": st.r });
                    jobs.push(pending(Suite::Duality, "invariant-side-expansion", params, move || {
                        Ok(truth(invariant_side_check(&st, s, delta, n, p)?, "reassembles to St^{S,R}"))
                    }));
                }
            }
            let qk = (2 - delta as i64) * pw(k);
            for st_prime in admissible_indices(p, n, qk, cfg.max_degree.saturating_sub(qk as u64)) {
                let params = json!({ "p": p, "n": n, "k": k, "delta": delta, "S'": st_prime.s, "R'": st_prime.r });
                jobs.push(pending(Suite::Duality, "power-side-expansion", params, move || {
                    let parts = power_side_expand(&st_prime, delta, k, p)?;
                    let direct = milnor_st(&st_prime, &crate::duality::power_input(p, k, delta)?)?;
                    Ok(same(&direct, &assemble_power_side(&parts, k, p)?))
                }));
            }
        }
    }
    single_entry_jobs(cfg, jobs);
}

fn duality_outcome(case: &DualityCase, p: u32) -> Result<Outcome> {
    match duality_check(case, p) {
        Ok(r) if r.equal => Ok(Outcome::Pass),
        Ok(r) => Ok(Outcome::Fail(format!("lhs = {}", r.lhs), format!("rhs = {}", r.rhs))),
        Err(AlgebraError::Inadmissible(..)) => Ok(Outcome::Skip("inadmissible (S', R')".into())),
        Err(e) => Err(e),
    }
}

/// Single-entry indices of the two expansions against the four closed
/// formulas for `P^r`.
fn single_entry_jobs(cfg: &VerifyConfig, jobs: &mut Vec<Pending>) {
    let p = cfg.p;
    let pw = |e: u32| (p as u64).pow(e);
    for n in 1..=cfg.max_n.min(2) as u32 {
        for delta in 0..=1u32 {
            let lo = -(delta as i32);
            for s in lo..=(n as i32 - delta as i32) {
                let dim = (2 - delta as i64) * pw(n) as i64 + crate::closed_forms::bracket_neg(p, s);
                for r in 0..=(dim as u64) / 2 {
                    let c = cfg.clone();
                    let params = json!({ "p": p, "n": n, "delta": delta, "s": s, "r": r });
                    jobs.push(pending(Suite::Duality, "single-entry-invariant-side", params, move || {
                        if let Some(skip) = over_budget(&c, n as usize, dim as u64 + 2 * r * (p as u64 - 1)) {
                            return Ok(skip);
                        }
                        let idx = MilnorIndex::single(r as u32);
                        let expansion = invariant_side_expand(&idx, s, delta, n as usize, p)?.reassemble()?;
                        let ctx = AlgebraContext::new(p, n as usize)?;
                        let closed = if delta == 1 {
                            power_on_m_with(ctx, r, n, s, Reading::Completed)?.value
                        } else {
                            power_on_q(ctx, r, n, s as u32)?.value
                        };
                        Ok(same(&closed, &expansion))
                    }));
                }
            }
        }
    }
    for k in 1..=cfg.max_n.min(2) as u32 {
        for delta in 0..=1u32 {
            let dim = (2 - delta as u64) * pw(k);
            for r in 0..=dim / 2 {
                let c = cfg.clone();
                let params = json!({ "p": p, "k": k, "delta": delta, "r": r });
                jobs.push(pending(Suite::Duality, "single-entry-power-side", params, move || {
                    if let Some(skip) = over_budget(&c, k as usize + 1, dim + 2 * r * (p as u64 - 1)) {
                        return Ok(skip);
                    }
                    let idx = MilnorIndex::single(r as u32);
                    let parts = power_side_expand(&idx, delta, k as usize, p)?;
                    let assembled = assemble_power_side(&parts, k as usize, p)?;
                    let ctx = AlgebraContext::new(p, k as usize + 1)?;
                    let closed = if delta == 1 { power_on_u(ctx, r, k)?.value } else { power_on_v(ctx, r, k)?.value };
                    Ok(same(&closed, &assembled))
                }));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(0, 0), 1);
        assert_eq!(monomial_count(0, 2), 0);
        assert_eq!(monomial_count(1, 0), 1);
        assert_eq!(monomial_count(1, 1), 1);
        assert_eq!(monomial_count(1, 4), 1);
        // degree 3 on two pairs: x_i y_j (4) and x1 x2 with nothing left over is degree 2
        assert_eq!(monomial_count(2, 3), 4);
        assert_eq!(monomial_count(2, 2), 3);
    }

    #[test]
    fn random_elements_are_homogeneous() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ctx = AlgebraContext::new(5, 3).unwrap();
        for d in 0..10 {
            let a = random_element(&mut rng, ctx, d, 5);
            assert!(a.is_zero() || a.degree() == Some(d));
        }
    }

    #[test]
    fn properties_hold_briefly() {
        for name in PROPERTIES {
            let run = run_property(name, 3, 30, 1).unwrap();
            assert_eq!(run.failure, None, "{name}");
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
