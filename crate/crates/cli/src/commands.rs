use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{bail, Context};
use plfeq::bernoulli::{bernoulli_at, bernoulli_number, bernoulli_polynomial};
use plfeq::czv::{alt_depth2, reduce_mzv_depth2, reduce_mzv_depth3, specialize, CzvCombination, LiValue};
use plfeq::engine::{Form, PliResult, ENGINE_VERSION};
use plfeq::numeric::{CzvEvaluator, VerifyOptions, VerifyReport};
use plfeq::root::RootOfUnity;
use plfeq::terms::{Format, Index, Render};
use plfeq::{BigRational, HpFloat, HpValue};
use serde::Serialize;

use crate::cache::{equation, EquationCache};
use crate::record::{to_json, EquationRecord, TableRecord, VerifySummary};
use crate::{Config, Outcome, OutputFormat, Result};

fn open_cache(cfg: &Config) -> Result<Option<EquationCache>> {
    cfg.cache_dir.as_ref().map(EquationCache::open).transpose()
}

fn parse_index(s: &str) -> Result<Index> {
    s.parse::<Index>().with_context(|| format!("cannot read index {s:?}; expected n1,n2,... with n_i ≥ 1"))
}

fn texfmt(f: OutputFormat) -> Format {
    match f {
        OutputFormat::Latex => Format::Latex,
        _ => Format::Text,
    }
}

fn vars(d: usize, f: Format) -> String {
    let v: Vec<String> = (1..=d)
        .map(|i| match f {
            Format::Text => format!("z{i}"),
            Format::Latex => format!("z_{{{i}}}"),
        })
        .collect();
    v.join(", ")
}

fn pli_label(n: &Index, args: &str, f: Format) -> String {
    match f {
        Format::Text => format!("PLi_{{{n}}}({args})"),
        Format::Latex => format!("\\mathrm{{PLi}}_{{{n}}}\\left({args}\\right)"),
    }
}

/// `PLi_n(z) = …` in text or LaTeX.
pub fn render_equation(r: &PliResult, f: Format) -> String {
    let lhs = pli_label(&r.index, &vars(r.index.depth(), f), f);
    format!("{lhs} = {}", r.equation.render(f))
}

fn verify_options(cfg: &Config) -> VerifyOptions {
    VerifyOptions { samples: cfg.samples, tolerance: cfg.tolerance, seed: 1 }
}

fn verify_one(cfg: &Config, r: &PliResult) -> Result<VerifyReport> {
    Ok(plfeq::numeric::verify_feq_with::<HpFloat>(r, &verify_options(cfg))?)
}

fn report_line(rep: &VerifyReport) -> String {
    format!(
        "{} max error {:.2e} at {} samples (tolerance {:.0e}, {}{})",
        if rep.pass { "PASS" } else { "FAIL" },
        rep.max_error,
        rep.samples,
        rep.tolerance,
        rep.precision,
        if rep.skipped > 0 { format!(", {} points resampled", rep.skipped) } else { String::new() }
    )
}

/// `feq`: the functional equation of one index.
pub fn cmd_feq(cfg: &Config, index: &str, verify: bool) -> Result<Outcome> {
    cfg.validate()?;
    let n = parse_index(index)?;
    let cache = open_cache(cfg)?;
    let r = equation(cache.as_ref(), &n, cfg.form)?;
    let report = if verify { Some(verify_one(cfg, &r)?) } else { None };
    let success = report.as_ref().map_or(true, |rep| rep.pass);
    let output = match cfg.format {
        OutputFormat::Json => {
            let mut rec = EquationRecord::new(&r);
            rec.verification = report;
            to_json(&rec)?
        }
        f => {
            let mut s = render_equation(&r, texfmt(f));
            s.push('\n');
            if let Some(rep) = &report {
                let prefix = if f == OutputFormat::Latex { "% " } else { "" };
                writeln!(s, "{prefix}verification: {}", report_line(rep))?;
            }
            s
        }
    };
    Ok(Outcome { output, success })
}

fn parse_roots(s: &str, d: usize) -> Result<Vec<RootOfUnity>> {
    let roots = s
        .split(',')
        .map(|p| p.parse::<RootOfUnity>().with_context(|| format!("cannot read root {p:?}; expected k/N")))
        .collect::<Result<Vec<_>>>()?;
    if roots.len() != d {
        bail!("{} roots given for an index of depth {d}", roots.len());
    }
    Ok(roots)
}

fn root_list(roots: &[RootOfUnity], f: Format) -> String {
    roots.iter().map(|r| r.render(f)).collect::<Vec<_>>().join(", ")
}

fn li_label(n: &Index, roots: &[RootOfUnity], f: Format) -> String {
    match f {
        Format::Text => format!("Li_{{{n}}}({})", root_list(roots, f)),
        Format::Latex => format!("\\mathrm{{Li}}_{{{n}}}\\left({}\\right)", root_list(roots, f)),
    }
}

/// Closed-form reduction of `Li_n(ρ)` when one applies to the index and roots.
fn closed_form(n: &Index, roots: &[RootOfUnity]) -> Option<(&'static str, CzvCombination)> {
    let e = n.entries();
    let all_one = roots.iter().all(RootOfUnity::is_one);
    let sign = |r: &RootOfUnity| match (r.numerator(), r.order()) {
        (0, _) => Some(1i8),
        (1, 2) => Some(-1i8),
        _ => None,
    };
    match e.len() {
        2 if all_one => reduce_mzv_depth2(e[0], e[1]).ok().map(|c| ("reduce_mzv_depth2", c)),
        3 if all_one => reduce_mzv_depth3(e[0], e[1], e[2]).ok().map(|c| ("reduce_mzv_depth3", c)),
        2 => {
            let (s1, s2) = (sign(&roots[0])?, sign(&roots[1])?);
            alt_depth2(e[0], e[1], s1, s2).ok().map(|c| ("alt_depth2", c))
        }
        _ => None,
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

#[derive(Serialize)]
struct NumericValue {
    re: f64,
    im: f64,
    error: f64,
}

impl From<HpValue> for NumericValue {
    fn from(v: HpValue) -> Self {
        let c = v.to_c64();
        NumericValue { re: c.re, im: c.im, error: v.error }
    }
}

impl std::fmt::Display for NumericValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:.15e} {} {:.15e} i (± {:.1e})", self.re, if self.im < 0.0 { '-' } else { '+' }, self.im.abs(), self.error)
    }
}

#[derive(Serialize)]
struct ClosedFormJson {
    method: &'static str,
    value: CzvCombination,
}

#[derive(Serialize)]
struct ReduceCheck {
    /// `Li_n(ρ) - (-1)^{|n|-d} Li_n(1/ρ)` evaluated directly.
    direct: NumericValue,
    specialization: NumericValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<NumericValue>,
    max_difference: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Serialize)]
struct ReduceJson {
    index: Vec<u32>,
    roots: Vec<String>,
    /// `PLi_n(ρ)`.
    specialization: CzvCombination,
    /// `Li_n(ρ) = PLi_n(ρ)/2`, present for roots `±1` and odd `|n| - d`.
    #[serde(skip_serializing_if = "Option::is_none")]
    li_value: Option<CzvCombination>,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<ClosedFormJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    check: Option<ReduceCheck>,
}

/// `reduce`: `PLi_n` at roots of unity in depth `d - 1`.
pub fn cmd_reduce(cfg: &Config, index: &str, roots: &str, closed: bool, verify: bool) -> Result<Outcome> {
    cfg.validate()?;
    let n = parse_index(index)?;
    let d = n.depth();
    let roots = parse_roots(roots, d)?;
    let cache = open_cache(cfg)?;
    let r = equation(cache.as_ref(), &n, cfg.form)?;
    let spec = specialize(&r, &roots)
        .map_err(|e| {
            anyhow::anyhow!("{e}\nthe value is only defined when the last index entry and root are not both 1")
        })?
        .normalized();
    let real = roots.iter().all(|r| r.is_one() || (r.numerator(), r.order()) == (1, 2));
    let li_value = (real && n.parity_exponent() % 2 == 1).then(|| spec.scaled(&half()));
    let closed = if closed { closed_form(&n, &roots).map(|(m, c)| (m, c.fold_zeta_zero())) } else { None };
    let check = if verify {
        let target = cfg.tolerance * 1e-6;
        let mut ev = CzvEvaluator::<HpFloat>::new(target);
        let value = LiValue::new(n.entries().to_vec(), roots.clone())?;
        let mut direct = ev.li(&value)?;
        let conj = ev.li(&value.conjugate())?;
        direct = if n.parity_exponent() % 2 == 0 { direct - conj } else { direct + conj };
        let s = ev.combination(&spec)?;
        let mut diff = (s - direct).abs();
        let c = match &closed {
            Some((_, c)) => {
                let v = ev.combination(c)?.scale(&BigRational::from_integer(2.into()));
                diff = diff.max((v - direct).abs());
                Some(v)
            }
            None => None,
        };
        Some(ReduceCheck {
            direct: direct.into(),
            specialization: s.into(),
            closed_form: c.map(Into::into),
            max_difference: diff,
            tolerance: cfg.tolerance,
            pass: diff <= cfg.tolerance,
        })
    } else {
        None
    };
    let success = check.as_ref().map_or(true, |c| c.pass);
    let output = match cfg.format {
        OutputFormat::Json => to_json(&ReduceJson {
            index: n.entries().to_vec(),
            roots: roots.iter().map(RootOfUnity::fraction).collect(),
            specialization: spec,
            li_value,
            closed_form: closed.map(|(method, value)| ClosedFormJson { method, value }),
            check,
        })?,
        of => {
            let f = texfmt(of);
            let mut s = String::new();
            writeln!(s, "{} = {}", pli_label(&n, &root_list(&roots, f), f), spec.render(f))?;
            if let Some(v) = &li_value {
                writeln!(s, "{} = {}", li_label(&n, &roots, f), v.render(f))?;
            }
            let comment = if of == OutputFormat::Latex { "% " } else { "" };
            if let Some((method, c)) = &closed {
                writeln!(s, "{comment}closed form ({method}):")?;
                writeln!(s, "{} = {}", li_label(&n, &roots, f), c.render(f))?;
            }
            if let Some(c) = &check {
                writeln!(s, "{comment}direct value:   {}", c.direct)?;
                writeln!(s, "{comment}specialization: {}", c.specialization)?;
                if let Some(v) = &c.closed_form {
                    writeln!(s, "{comment}2 × closed form: {v}")?;
                }
                writeln!(
                    s,
                    "{comment}check: {} max difference {:.2e} (tolerance {:.0e})",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.max_difference,
                    c.tolerance
                )?;
            }
            s
        }
    };
    Ok(Outcome { output, success })
}

/// Runs `f` on every index with a small worker pool; results keep the input order.
fn parallel_map<T: Send>(items: &[Index], f: impl Fn(&Index) -> T + Sync) -> Vec<T> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let v = f(&items[i]);
                slots.lock().unwrap()[i] = Some(v);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|v| v.expect("every slot filled")).collect()
}

fn sorted_indices(max_weight: u32) -> Vec<Index> {
    let mut v = Index::all_up_to_weight(max_weight);
    v.sort_by(|a, b| (a.weight(), a.entries()).cmp(&(b.weight(), b.entries())));
    v
}

/// `verify`: numerical check of every equation of weight at most `max_weight`.
pub fn cmd_verify(cfg: &Config, max_weight: u32) -> Result<Outcome> {
    cfg.validate()?;
    if max_weight == 0 {
        bail!("--max-weight must be at least 1");
    }
    let cache = open_cache(cfg)?;
    let indices = sorted_indices(max_weight);
    let results = parallel_map(&indices, |n| -> Result<VerifyReport> {
        let r = equation(cache.as_ref(), n, cfg.form)?;
        verify_one(cfg, &r)
    });
    let mut reports = Vec::new();
    for (n, r) in indices.iter().zip(results) {
        reports.push(r.with_context(|| format!("verifying ({n})"))?);
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    let failed = reports.len() - passed;
    let summary = VerifySummary {
        max_weight,
        samples: cfg.samples,
        tolerance: cfg.tolerance,
        precision: reports.first().map_or_else(String::new, |r| r.precision.clone()),
        passed,
        failed,
        pass: failed == 0,
        reports,
    };
    let output = match cfg.format {
        OutputFormat::Json => to_json(&summary)?,
        of => {
            let comment = if of == OutputFormat::Latex { "% " } else { "" };
            let mut s = String::new();
            for rep in &summary.reports {
                let n = Index::new(rep.index.clone())?;
                writeln!(s, "{comment}({n}){:pad$} {}", "", report_line(rep), pad = 14usize.saturating_sub(n.to_string().len()))?;
            }
            writeln!(
                s,
                "{comment}{} {}: {passed} passed, {failed} failed (tolerance {:.0e}, {} samples)",
                summary.reports.len(),
                if summary.reports.len() == 1 { "index" } else { "indices" },
                cfg.tolerance,
                cfg.samples
            )?;
            s
        }
    };
    Ok(Outcome { output, success: summary.pass })
}

/// Every equation of weight at most `max_weight`, ordered by weight and then
/// lexicographically.
pub fn table_equations(cfg: &Config, max_weight: u32) -> Result<Vec<PliResult>> {
    if max_weight == 0 {
        bail!("--max-weight must be at least 1");
    }
    let cache = open_cache(cfg)?;
    let indices = sorted_indices(max_weight);
    parallel_map(&indices, |n| equation(cache.as_ref(), n, cfg.form)).into_iter().collect()
}

fn form_name(f: Form) -> &'static str {
    match f {
        Form::Canonical => "canonical",
        Form::Compact => "compact",
    }
}

/// Inserts a LaTeX line break after every few top-level terms.
fn break_lines(eq: &str) -> String {
    const TERMS_PER_LINE: usize = 4;
    let mut out = String::new();
    let mut terms = 0;
    let mut rest = eq;
    while let Some(pos) = [" + ", " - "].iter().filter_map(|sep| rest.find(sep)).min() {
        terms += 1;
        out.push_str(&rest[..pos]);
        if terms % TERMS_PER_LINE == 0 {
            out.push_str(" \\\\\n");
        }
        out.push_str(&rest[pos..pos + 3]);
        rest = &rest[pos + 3..];
    }
    out.push_str(rest);
    out
}

/// `table`: one document with all equations up to `max_weight`.
pub fn cmd_table(cfg: &Config, max_weight: u32) -> Result<Outcome> {
    cfg.validate()?;
    let results = table_equations(cfg, max_weight)?;
    let header = format!(
        "{} equations PLi_n(z) = Li_n(z) - (-1)^(|n|-d) Li_n(1/z) with |n| <= {max_weight}, {} form, engine {ENGINE_VERSION}",
        results.len(),
        form_name(cfg.form)
    );
    let output = match cfg.format {
        OutputFormat::Json => to_json(&TableRecord::new(cfg.form, max_weight, &results))?,
        OutputFormat::Text => {
            let mut s = format!("# {header}\n");
            for r in &results {
                writeln!(s, "\n{}", render_equation(r, Format::Text))?;
            }
            s
        }
        OutputFormat::Latex => {
            let mut s = String::from(
                "\\documentclass{article}\n\\usepackage{amsmath}\n\\allowdisplaybreaks\n\\begin{document}\n",
            );
            writeln!(s, "% {header}")?;
            for r in &results {
                writeln!(s, "\\begin{{multline*}}\n{}\n\\end{{multline*}}", break_lines(&render_equation(r, Format::Latex)))?;
            }
            s.push_str("\\end{document}\n");
            s
        }
    };
    Ok(Outcome::ok(output))
}

#[derive(Serialize)]
struct BernoulliJson {
    k: u32,
    number: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<(String, String)>,
}

/// `bernoulli`: `B_k`, optionally the polynomial `B_k(x)` and a value `B_k(x)`.
pub fn cmd_bernoulli(cfg: &Config, k: u32, poly: bool, at: Option<&str>) -> Result<Outcome> {
    let number = bernoulli_number(k)?;
    let polynomial = if poly { Some(bernoulli_polynomial(k)?) } else { None };
    let at = match at {
        Some(x) => {
            let q: BigRational = x.trim().parse().map_err(|_| anyhow::anyhow!("cannot read rational {x:?}"))?;
            Some((q.clone(), bernoulli_at(k, &q)?))
        }
        None => None,
    };
    let output = match cfg.format {
        OutputFormat::Json => to_json(&BernoulliJson {
            k,
            number: number.to_string(),
            polynomial: polynomial.as_ref().map(|p| p.coeffs().iter().map(ToString::to_string).collect()),
            at: at.as_ref().map(|(x, v)| (x.to_string(), v.to_string())),
        })?,
        _ => {
            let mut s = format!("B_{k} = {number}\n");
            if let Some(p) = &polynomial {
                writeln!(s, "B_{k}(x) = {p}")?;
            }
            if let Some((x, v)) = &at {
                writeln!(s, "B_{k}({x}) = {v}")?;
            }
            s
        }
    };
    Ok(Outcome::ok(output))
}
