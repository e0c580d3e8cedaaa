//! Text, JSON and LaTeX forms of elements, and the text parser.
//!
//! Text grammar: `term (' + ' term)*`, `term = coefficient? factor ('*' factor)*`,
//! `factor = 'x'INDEX | 'y'INDEX('^'EXP)?`, indices starting at 1, e.g.
//! `2*x1*y1^3*y2 + y2^9`. Rendering lists terms from the largest monomial
//! down, exterior factors first, and polynomial factors from the highest
//! index down.

use serde::{Deserialize, Serialize};

use crate::element::{AlgebraContext, Element};
use crate::error::{AlgebraError, Result};
use crate::monomial::{Monomial, MAX_PAIRS};

fn factors(m: &Monomial, latex: bool) -> Vec<String> {
    let mut out: Vec<String> = m
        .xs()
        .map(|i| if latex { format!("x_{{{}}}", i + 1) } else { format!("x{}", i + 1) })
        .collect();
    for i in (0..MAX_PAIRS).rev() {
        let e = m.y_exp(i);
        let f = match (e, latex) {
            (0, _) => continue,
            (1, false) => format!("y{}", i + 1),
            (1, true) => format!("y_{{{}}}", i + 1),
            (_, false) => format!("y{}^{}", i + 1, e),
            (_, true) => format!("y_{{{}}}^{{{}}}", i + 1, e),
        };
        out.push(f);
    }
    out
}

pub fn to_text(a: &Element) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    a.terms()
        .rev()
        .map(|(m, c)| {
            let fs = factors(m, false);
            match (c, fs.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => fs.join("*"),
                _ => format!("{c}*{}", fs.join("*")),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn to_latex(a: &Element) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let f = a.ctx().field();
    let mut out = String::new();
    for (k, (m, c)) in a.terms().rev().enumerate() {
        let s = f.signed(c);
        let fs = factors(m, true).join(" ");
        if k == 0 {
            if s < 0 {
                out.push('-');
            }
        } else {
            out.push_str(if s < 0 { " - " } else { " + " });
        }
        let mag = s.unsigned_abs();
        if fs.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != 1 {
                out.push_str(&format!("{mag} "));
            }
            out.push_str(&fs);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: u32,
    pub x: Vec<usize>,
    pub y: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub p: u32,
    pub m: usize,
    pub terms: Vec<TermJson>,
}

impl From<&Element> for ElementJson {
    fn from(a: &Element) -> Self {
        let m = a.ctx().m();
        ElementJson {
            p: a.p(),
            m,
            terms: a
                .terms()
                .rev()
                .map(|(mono, c)| TermJson {
                    c,
                    x: mono.xs().map(|i| i + 1).collect(),
                    y: mono.ys()[..m].to_vec(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ElementJson> for Element {
    type Error = AlgebraError;

    fn try_from(j: &ElementJson) -> Result<Element> {
        let ctx = AlgebraContext::new(j.p, j.m)?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.c >= j.p {
                return Err(AlgebraError::Parse(format!("coefficient {} not in 0..{}", t.c, j.p)));
            }
            if t.y.len() > j.m || t.x.iter().any(|&i| i == 0 || i > j.m) {
                return Err(AlgebraError::Parse("term does not fit the context".into()));
            }
            let xs: Vec<usize> = t.x.iter().map(|i| i - 1).collect();
            terms.push((t.c as i64, Monomial::new(&xs, &t.y)?));
        }
        Element::from_terms(ctx, terms)
    }
}

pub fn to_json(a: &Element) -> serde_json::Value {
    serde_json::to_value(ElementJson::from(a)).expect("serializable")
}

pub fn from_json(v: &serde_json::Value) -> Result<Element> {
    let j: ElementJson = serde_json::from_value(v.clone()).map_err(|e| AlgebraError::Parse(e.to_string()))?;
    Element::try_from(&j)
}

enum Factor {
    Coeff(i64),
    X(usize),
    Y(usize, u32),
}

fn parse_factor(tok: &str) -> Result<Factor> {
    let bad = || AlgebraError::Parse(format!("bad factor `{tok}`"));
    if let Some(rest) = tok.strip_prefix('x') {
        let i: usize = rest.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        return Ok(Factor::X(i - 1));
    }
    if let Some(rest) = tok.strip_prefix('y') {
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad())?),
            None => (rest, 1),
        };
        let i: usize = idx.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        return Ok(Factor::Y(i - 1, exp));
    }
    tok.parse::<i64>().map(Factor::Coeff).map_err(|_| bad())
}

/// Parses the text grammar. `m` defaults to the largest index that appears
/// (at least 1). A leading `-` on a term negates it.
pub fn parse(text: &str, p: u32, m: Option<usize>) -> Result<Element> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(AlgebraError::Parse("empty expression".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            terms.push((negative, std::mem::take(&mut cur)));
            negative = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() {
            if ch == '-' {
                negative = !negative;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(AlgebraError::Parse("dangling sign".into()));
    }
    terms.push((negative, cur));

    let mut parsed: Vec<(bool, Vec<Factor>)> = Vec::new();
    let mut top = 0usize;
    for (neg, t) in terms {
        let mut fs = Vec::new();
        for tok in t.split('*') {
            let f = parse_factor(tok)?;
            match f {
                Factor::X(i) | Factor::Y(i, _) => top = top.max(i + 1),
                Factor::Coeff(_) => {}
            }
            fs.push(f);
        }
        parsed.push((neg, fs));
    }
    let m = m.unwrap_or(top.max(1));
    if top > m {
        return Err(AlgebraError::Parse(format!("index {top} exceeds m = {m}")));
    }
    let ctx = AlgebraContext::new(p, m)?;
    let mut out = Element::zero(ctx);
    for (neg, fs) in parsed {
        let mut term = Element::one(ctx);
        for f in fs {
            let g = match f {
                Factor::Coeff(c) => Element::constant(ctx, c),
                Factor::X(i) => Element::x(ctx, i),
                Factor::Y(i, e) => Element::y_pow(ctx, i, e),
            };
            term = term.try_mul(&g)?;
        }
        if neg {
            term = term.neg();
        }
        out = out.try_add(&term)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_v2_like_the_cli() {
        let a = parse("y2^3 - y2*y1^2", 3, None).unwrap();
        assert_eq!(to_text(&a), "y2^3 + 2*y2*y1^2");
        assert_eq!(to_latex(&a), "y_{2}^{3} - y_{2} y_{1}^{2}");
    }

    #[test]
    fn grammar_example() {
        let a = parse("2*x1*y1^3*y2 + y2^9", 3, Some(2)).unwrap();
        let j = to_json(&a);
        assert_eq!(
            j,
            serde_json::json!({"p":3,"m":2,"terms":[{"c":1,"x":[],"y":[0,9]},{"c":2,"x":[1],"y":[3,1]}]})
        );
        assert_eq!(from_json(&j).unwrap(), a);
        assert_eq!(parse(&to_text(&a), 3, Some(2)).unwrap(), a);
    }

    #[test]
    fn exterior_order_in_input_carries_sign() {
        let a = parse("x2*x1", 5, None).unwrap();
        assert_eq!(to_text(&a), "4*x1*x2");
        assert_eq!(to_text(&parse("0", 5, Some(1)).unwrap()), "0");
        assert_eq!(to_text(&parse("1", 5, Some(1)).unwrap()), "1");
    }

    #[test]
    fn parse_errors() {
        assert!(parse("x0", 3, None).is_err());
        assert!(parse("z1", 3, None).is_err());
        assert!(parse("y3", 3, Some(2)).is_err());
        assert!(parse("", 3, None).is_err());
        assert!(parse("y1 +", 3, None).is_err());
    }
}
