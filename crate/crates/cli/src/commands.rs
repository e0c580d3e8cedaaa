use mui_invariants::closed_forms::{
    bracket_neg, power_on_m_with, power_on_q, power_on_u, power_on_v, st_on_u2_with, st_on_v2, ClosedFormResult,
    Reading, V2Signs,
};
use mui_invariants::render::{parse, to_json, to_latex, to_text};
use mui_invariants::verify::{run as run_suites, Report, Status, Suite, VerifyConfig};
use mui_invariants::{
    bockstein, d_star_p, milnor_st, p_power, AlgebraContext, AlgebraError, Element, Frame, InvariantId, MilnorIndex,
};
use serde_json::{json, Value};

use crate::args::{
    ApplyArgs, ClosedFormArgs, Cli, Command, Format, Formula, Grid, InvariantArgs, MilnorArgs, ReadingArg,
    SteenrodCommand, TableArgs, VerifyArgs,
};

pub struct Output {
    pub text: String,
    pub all_passed: bool,
}

pub enum Failure {
    /// Bad input; exit code 2.
    Usage(String),
    /// A computed value disagreed with its oracle; exit code 1.
    Check(String),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Usage(msg.into()))
}

fn need<T: Copy>(v: Option<T>, flag: &str, what: &str) -> Res<T> {
    v.ok_or_else(|| Failure::Usage(format!("{what} needs --{flag}")))
}

fn passed(text: String) -> Output {
    Output { text, all_passed: true }
}

pub fn run(cli: &Cli) -> Res<Output> {
    if cli.format == Format::Csv && !matches!(cli.command, Command::Table(_)) {
        return usage("csv output is only available for `table`");
    }
    match &cli.command {
        Command::Invariant(a) => invariant(a, cli.format),
        Command::Steenrod(SteenrodCommand::Apply(a)) => apply(a, cli.format),
        Command::Steenrod(SteenrodCommand::Milnor(a)) => milnor(a, cli.format),
        Command::ClosedForm(a) => closed_form(a, cli.format),
        Command::Verify(a) => verify(a, cli.format),
        Command::Table(a) => table(a, cli.format),
    }
}

fn element_output(e: &Element, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", to_json(e)),
        Format::Latex => format!("{}\n", to_latex(e)),
        _ => format!("{}\n", to_text(e)),
    }
}

fn field_check(p: u32) -> Res<AlgebraContext> {
    Ok(AlgebraContext::new(p, 1)?)
}

pub fn invariant_id(a: &InvariantArgs) -> Res<InvariantId> {
    let what = a.name.as_str();
    let s_u32 = |s: i32| u32::try_from(s).map_err(|_| Failure::Usage(format!("{what} needs --s >= 0")));
    let id = match what {
        "L" => match a.s {
            Some(s) => InvariantId::Lks { k: need(a.k, "k", what)?, s: s_u32(s)? },
            None => InvariantId::L { k: need(a.k, "k", what)? },
        },
        "Lt" => InvariantId::Ltilde { n: need(a.n, "n", what)? },
        "M" => InvariantId::Mks { k: need(a.k, "k", what)?, s: s_u32(need(a.s, "s", what)?)? },
        "Mt" => InvariantId::Mtilde { n: need(a.n, "n", what)?, s: need(a.s, "s", what)? },
        "Q" => InvariantId::Q { n: need(a.n, "n", what)?, s: s_u32(need(a.s, "s", what)?)? },
        "U" => InvariantId::U { k: need(a.k, "k", what)? },
        "V" => InvariantId::V { k: need(a.k, "k", what)? },
        "bracketE" if !a.e.is_empty() => InvariantId::BracketE(a.e.clone()),
        "bracketX" => InvariantId::BracketX(a.e.clone()),
        "bracketE" => return usage("bracketE needs --e"),
        other => return usage(format!("unknown invariant {other:?}; expected L, Lt, M, Mt, Q, U, V, bracketE or bracketX")),
    };
    id.validate()?;
    if id.pairs() == 0 {
        return usage(format!("{id} lives on zero pairs"));
    }
    Ok(id)
}

fn invariant(a: &InvariantArgs, format: Format) -> Res<Output> {
    field_check(a.p)?;
    let id = invariant_id(a)?;
    let ctx = AlgebraContext::new(a.p, id.pairs())?;
    let e = Frame::standard(ctx).get(&id)?;
    Ok(passed(element_output(&e, format)))
}

fn parse_expr(expr: &str, p: u32, m: Option<usize>) -> Res<Element> {
    field_check(p)?;
    Ok(parse(expr, p, m)?)
}

fn apply(a: &ApplyArgs, format: Format) -> Res<Output> {
    let e = parse_expr(&a.expr, a.p, a.m)?;
    let op = a.op.trim();
    let number = |rest: &str| rest.trim_matches(|c| c == '{' || c == '}').parse::<usize>();
    let value = if op == "beta" || op == "b" {
        bockstein(&e)?
    } else if let Some(rest) = op.strip_prefix("P^") {
        p_power(number(rest).map_err(|_| Failure::Usage(format!("bad operation {op:?}")))?, &e)?
    } else if let Some(rest) = op.strip_prefix("d_") {
        d_star_p(number(rest).map_err(|_| Failure::Usage(format!("bad operation {op:?}")))?, &e)?
    } else {
        return usage(format!("unknown operation {op:?}; expected P^r, beta or d_n"));
    };
    Ok(passed(element_output(&value, format)))
}

fn milnor(a: &MilnorArgs, format: Format) -> Res<Output> {
    let e = parse_expr(&a.expr, a.p, a.m)?;
    let idx = MilnorIndex { s: a.s.clone(), r: a.r.clone() };
    let value = match milnor_st(&idx, &e) {
        Err(AlgebraError::Inadmissible(..)) => Element::zero(e.ctx()),
        other => other?,
    };
    Ok(passed(element_output(&value, format)))
}

/// Value of a closed formula and of its oracle at one parameter point.
struct Evaluated {
    params: Value,
    result: ClosedFormResult,
    oracle: Element,
}

fn reading(r: ReadingArg) -> Reading {
    match r {
        ReadingArg::Completed => Reading::Completed,
        ReadingArg::Truncated => Reading::Truncated,
    }
}

fn zero_if_inadmissible(v: mui_invariants::Result<Element>, ctx: AlgebraContext) -> Res<Element> {
    match v {
        Err(AlgebraError::Inadmissible(..)) => Ok(Element::zero(ctx)),
        other => Ok(other?),
    }
}

/// `P^r` formulas on one invariant; `nk` is `k` for `U`, `V` and `n` otherwise.
fn evaluate_power(of: Formula, p: u32, nk: u32, s: i32, r: u64, read: Reading) -> Res<Evaluated> {
    let (ctx, target, result) = match of {
        Formula::U => {
            let ctx = AlgebraContext::new(p, nk as usize + 1)?;
            (ctx, InvariantId::U { k: nk + 1 }, power_on_u(ctx, r, nk)?)
        }
        Formula::V => {
            let ctx = AlgebraContext::new(p, nk as usize + 1)?;
            (ctx, InvariantId::V { k: nk + 1 }, power_on_v(ctx, r, nk)?)
        }
        Formula::Mt => {
            let ctx = AlgebraContext::new(p, nk as usize)?;
            (ctx, InvariantId::Mtilde { n: nk, s }, power_on_m_with(ctx, r, nk, s, read)?)
        }
        Formula::Q => {
            let ctx = AlgebraContext::new(p, nk as usize)?;
            let s = u32::try_from(s).map_err(|_| Failure::Usage("Q needs --s >= 0".into()))?;
            (ctx, InvariantId::Q { n: nk, s }, power_on_q(ctx, r, nk, s)?)
        }
        Formula::StU2 | Formula::StV2 => unreachable!("two-pair formulas are evaluated elsewhere"),
    };
    let oracle = p_power(r as usize, &Frame::standard(ctx).get(&target)?)?;
    let params = json!({ "p": p, "target": target.to_string(), "r": r });
    Ok(Evaluated { params, result, oracle })
}

fn closed_form(a: &ClosedFormArgs, format: Format) -> Res<Output> {
    field_check(a.p)?;
    let read = reading(a.reading);
    let ev = match a.of {
        Formula::U | Formula::V => {
            let k = need(a.k, "k", "this formula")?;
            evaluate_power(a.of, a.p, k, 0, need(a.r, "r", "this formula")?, read)?
        }
        Formula::Mt | Formula::Q => {
            let n = need(a.n, "n", "this formula")?;
            let s = need(a.s, "s", "this formula")?;
            evaluate_power(a.of, a.p, n, s, need(a.r, "r", "this formula")?, read)?
        }
        Formula::StU2 | Formula::StV2 => {
            if a.big_r.is_empty() || a.big_r.len() > 2 {
                return usage("two-pair formulas need --R with one or two entries");
            }
            let ctx = AlgebraContext::new(a.p, 2)?;
            let frame = Frame::standard(ctx);
            let idx = MilnorIndex { s: a.big_s.clone(), r: a.big_r.clone() };
            let (value, oracle) = if a.of == Formula::StU2 {
                let v = st_on_u2_with(ctx, &idx.s, &idx.r, read)?;
                (v, zero_if_inadmissible(milnor_st(&idx, &frame.u(2)?), ctx)?)
            } else {
                if !idx.s.is_empty() {
                    return usage("the V_2 formula takes no --S");
                }
                let v = st_on_v2(ctx, &idx.r, V2Signs::RESOLVED)?;
                (v, zero_if_inadmissible(milnor_st(&idx, &frame.v(2)?), ctx)?)
            };
            let result = ClosedFormResult {
                applicable: !value.is_zero(),
                value,
                branch: String::new(),
                symbolic: String::new(),
            };
            Evaluated { params: json!({ "p": a.p, "S": idx.s, "R": idx.r }), result, oracle }
        }
    };
    let agrees = ev.result.value == ev.oracle;
    let text = match format {
        Format::Json => {
            let mut out = json!({
                "formula": format!("{:?}", a.of),
                "params": ev.params,
                "applicable": ev.result.applicable,
                "branch": ev.result.branch,
                "symbolic": ev.result.symbolic,
                "value": to_json(&ev.result.value),
                "oracle_agrees": agrees,
            });
            if !agrees {
                out["oracle"] = to_json(&ev.oracle);
            }
            format!("{out}\n")
        }
        Format::Latex => format!("{}\n", to_latex(&ev.result.value)),
        _ => {
            let mut t = format!("{}\n", to_text(&ev.result.value));
            if !agrees {
                t.push_str(&format!("oracle: {}\n", to_text(&ev.oracle)));
            }
            t
        }
    };
    Ok(Output { text, all_passed: agrees })
}

fn verify(a: &VerifyArgs, format: Format) -> Res<Output> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        a.suite.split(',').map(|s| s.trim().parse::<Suite>()).collect::<Result<_, _>>()?
    };
    let defaults = VerifyConfig::default();
    let cfg = VerifyConfig {
        p: a.p,
        max_n: a.max_n,
        seed: a.seed.unwrap_or(defaults.seed),
        cases: a.cases.unwrap_or(defaults.cases),
        budget: a.budget.unwrap_or(defaults.budget),
        max_degree: a.max_degree.unwrap_or(match a.grid {
            Grid::Small => 40,
            Grid::Large => 60,
        }),
    };
    if cfg.max_n == 0 {
        return usage("--max-n must be at least 1");
    }
    let report = run_suites(&suites, &cfg)?;
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Latex => report_latex(&report),
        _ => report_text(&report),
    };
    Ok(Output { text, all_passed: report.passed() })
}

fn status_note(s: &Status) -> String {
    match s {
        Status::Pass => String::new(),
        Status::Fail { expected, actual } => format!("  expected: {expected}  actual: {actual}"),
        Status::Skip { reason } => format!("  ({reason})"),
    }
}

fn report_text(r: &Report) -> String {
    let mut out = String::new();
    for c in &r.cells {
        out.push_str(&format!("{:<4}  {:<12}  {:<30}  {}{}\n", c.status.label(), c.suite, c.check, c.params, status_note(&c.status)));
    }
    for rd in &r.readings {
        out.push_str(&format!(
            "note  {} ({}): {} of {} cells differ from the oracle\n",
            rd.formula, rd.reading, rd.mismatches, rd.cells
        ));
    }
    out.push_str(&format!("summary: {} pass, {} fail, {} skip\n", r.summary.pass, r.summary.fail, r.summary.skip));
    out
}

fn latex_escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('{', "\\{").replace('}', "\\}").replace('^', "\\^{}")
}

fn report_latex(r: &Report) -> String {
    let mut out = String::from("\\begin{tabular}{llll}\nstatus & suite & check & parameters \\\\\n\\hline\n");
    for c in &r.cells {
        out.push_str(&format!(
            "{} & {} & {} & \\texttt{{{}}} \\\\\n",
            c.status.label(),
            c.suite,
            latex_escape(&c.check),
            latex_escape(&c.params.to_string())
        ));
    }
    out.push_str("\\end{tabular}\n");
    out
}

struct TableColumn {
    label: String,
    s: i32,
    dim: u64,
}

fn columns(a: &TableArgs) -> Res<(u32, Vec<TableColumn>)> {
    let p = a.p;
    let pw = |e: u32| (p as u64).pow(e);
    Ok(match a.of {
        Formula::U | Formula::V => {
            let k = need(a.k, "k", "this table")?;
            let dim = if a.of == Formula::U { pw(k) } else { 2 * pw(k) };
            let name = if a.of == Formula::U { "U" } else { "V" };
            (k, vec![TableColumn { label: format!("{name}_{{{}}}", k + 1), s: 0, dim }])
        }
        Formula::Mt => {
            let n = need(a.n, "n", "this table")?;
            let cols = (-1..n as i32)
                .map(|s| TableColumn { label: format!("s={s}"), s, dim: (pw(n) as i64 + bracket_neg(p, s)) as u64 })
                .collect();
            (n, cols)
        }
        Formula::Q => {
            let n = need(a.n, "n", "this table")?;
            let cols = (0..n as i32)
                .map(|s| TableColumn { label: format!("s={s}"), s, dim: 2 * (pw(n) - pw(s as u32)) })
                .collect();
            (n, cols)
        }
        Formula::StU2 | Formula::StV2 => return usage("tables cover the P^r formulas: U, Mt, V and Q"),
    })
}

fn table(a: &TableArgs, format: Format) -> Res<Output> {
    field_check(a.p)?;
    let (nk, cols) = columns(a)?;
    let top = cols.iter().map(|c| c.dim / 2).max().unwrap_or(0);
    let from = a.r_from.unwrap_or(0);
    let to = a.r_to.unwrap_or(top).min(top);
    let mut rows: Vec<(u64, Vec<String>)> = Vec::new();
    for r in from..=to {
        if from > to {
            break;
        }
        let mut cells = Vec::new();
        for c in &cols {
            let ev = evaluate_power(a.of, a.p, nk, c.s, r, Reading::Completed)?;
            if ev.result.value != ev.oracle {
                return Err(Failure::Check(format!("r = {r}, {}: closed form disagrees with the oracle", c.label)));
            }
            cells.push(ev.result.symbolic);
        }
        rows.push((r, cells));
    }
    let header: Vec<&str> = cols.iter().map(|c| c.label.as_str()).collect();
    let text = match format {
        Format::Json => {
            let body: Vec<Value> = rows.iter().map(|(r, cells)| json!({ "r": r, "cells": cells })).collect();
            format!("{}\n", json!({ "formula": format!("{:?}", a.of), "p": a.p, "columns": header, "rows": body }))
        }
        Format::Latex => {
            let mut t = format!("\\begin{{tabular}}{{r{}}}\n$r$", "l".repeat(cols.len()));
            for h in &header {
                t.push_str(&format!(" & ${h}$"));
            }
            t.push_str(" \\\\\n\\hline\n");
            for (r, cells) in &rows {
                t.push_str(&r.to_string());
                for c in cells {
                    t.push_str(&format!(" & ${c}$"));
                }
                t.push_str(" \\\\\n");
            }
            t.push_str("\\end{tabular}\n");
            t
        }
        Format::Csv => {
            let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
            let mut t = format!("r,{}\n", header.iter().map(|h| quote(h)).collect::<Vec<_>>().join(","));
            for (r, cells) in &rows {
                t.push_str(&format!("{r},{}\n", cells.iter().map(|c| quote(c)).collect::<Vec<_>>().join(",")));
            }
            t
        }
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for (_, cells) in &rows {
                for (w, c) in widths.iter_mut().zip(cells) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |first: String, items: Vec<&str>| {
                let mut l = format!("{first:>3}");
                for (w, it) in widths.iter().zip(items) {
                    l.push_str(&format!(" | {it:<w$}"));
                }
                format!("{}\n", l.trim_end())
            };
            let mut t = line("r".into(), header.clone());
            for (r, cells) in &rows {
                t.push_str(&line(r.to_string(), cells.iter().map(String::as_str).collect()));
            }
            t
        }
    };
    Ok(passed(text))
}
