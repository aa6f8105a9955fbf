use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ConsProd, Generator, LiFactor, LinComb, LogExpansion, LogMonomial};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Latex,
}

pub trait Render {
    fn render(&self, f: Format) -> String;
}

fn span(c: &ConsProd, f: Format) -> String {
    let vars: String = (c.start..=c.end)
        .map(|i| match f {
            Format::Text => format!("z{i}"),
            Format::Latex => format!("z_{{{i}}}"),
        })
        .collect();
    if !c.inverted {
        return vars;
    }
    match f {
        Format::Text if c.start == c.end => format!("1/{vars}"),
        Format::Text => format!("1/({vars})"),
        Format::Latex => format!("\\frac{{1}}{{{vars}}}"),
    }
}

impl Render for ConsProd {
    fn render(&self, f: Format) -> String {
        span(self, f)
    }
}

fn join_indices(v: &[u32]) -> String {
    v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

impl Render for LiFactor {
    fn render(&self, f: Format) -> String {
        let args: Vec<String> = self.args.iter().map(|a| span(a, f)).collect();
        match f {
            Format::Text => format!("Li_{{{}}}({})", join_indices(&self.indices), args.join(", ")),
            Format::Latex => format!(
                "\\mathrm{{Li}}_{{{}}}\\left({}\\right)",
                join_indices(&self.indices),
                args.join(", ")
            ),
        }
    }
}

fn ber(start: u32, k: u32, ambient: u32, f: Format) -> String {
    let a = span(&ConsProd::new(start, ambient), f);
    match f {
        Format::Text => format!("ber_{k}({a})"),
        Format::Latex => format!("\\mathrm{{ber}}_{{{k}}}\\left({a}\\right)"),
    }
}

impl Render for Generator {
    fn render(&self, f: Format) -> String {
        let mut parts: Vec<String> =
            self.bers().iter().map(|&(s, k)| ber(s, k, self.ambient(), f)).collect();
        parts.extend(self.lis().iter().map(|l| l.render(f)));
        match f {
            Format::Text => parts.join(" "),
            Format::Latex => parts.join("\\,"),
        }
    }
}

pub(crate) fn rational(q: &BigRational, f: Format) -> String {
    if q.denom().is_one() {
        return q.numer().to_string();
    }
    match f {
        Format::Text => format!("{}/{}", q.numer(), q.denom()),
        Format::Latex => format!("\\frac{{{}}}{{{}}}", q.numer(), q.denom()),
    }
}

/// Signed sum `c_1 t_1 ± c_2 t_2 …`; an empty monomial string means `1`.
pub(crate) fn signed_sum(items: &[(BigRational, String)], f: Format) -> String {
    if items.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, body)) in items.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let sep = match f {
            Format::Text => " ",
            Format::Latex => "\\,",
        };
        if body.is_empty() {
            out.push_str(&rational(&mag, f));
        } else if mag.is_one() {
            out.push_str(body);
        } else {
            out.push_str(&rational(&mag, f));
            out.push_str(sep);
            out.push_str(body);
        }
    }
    out
}

impl Render for LinComb {
    fn render(&self, f: Format) -> String {
        let items: Vec<(BigRational, String)> = self.iter().map(|(g, q)| (q.clone(), g.render(f))).collect();
        signed_sum(&items, f)
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(Format::Text))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(Format::Text))
    }
}

fn power(base: String, e: u32, f: Format) -> String {
    match (e, f) {
        (1, _) => base,
        (_, Format::Text) => format!("{base}^{e}"),
        (_, Format::Latex) => format!("{base}^{{{e}}}"),
    }
}

fn log_monomial(m: &LogMonomial, ambient: u32, f: Format) -> (BigRational, String) {
    let mut coeff = BigRational::one();
    let mut parts = Vec::new();
    if m.two_pi_i > 0 {
        if m.two_pi_i % 2 == 0 {
            // (2πi)^2 = -24 ζ(2)
            let k = m.two_pi_i / 2;
            coeff *= BigRational::from_integer(BigInt::from(-24).pow(k));
            let z = match f {
                Format::Text => "ζ(2)".to_string(),
                Format::Latex => "\\zeta(2)".to_string(),
            };
            parts.push(power(z, k, f));
        } else {
            let b = match f {
                Format::Text => "(2πi)".to_string(),
                Format::Latex => "(2\\pi i)".to_string(),
            };
            parts.push(power(b, m.two_pi_i, f));
        }
    }
    for &(s, e) in &m.logs {
        let a = span(&ConsProd::new(s, ambient), f);
        let l = match f {
            Format::Text => format!("log(-{a})"),
            Format::Latex => format!("\\log(-{a})"),
        };
        parts.push(power(l, e, f));
    }
    parts.extend(m.lis.iter().map(|l| l.render(f)));
    let body = match f {
        Format::Text => parts.join(" "),
        Format::Latex => parts.join("\\,"),
    };
    (coeff, body)
}

impl Render for LogExpansion {
    fn render(&self, f: Format) -> String {
        let items: Vec<(BigRational, String)> = self
            .terms
            .iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(m, q)| {
                let (c, body) = log_monomial(m, self.ambient, f);
                (c * q, body)
            })
            .collect();
        signed_sum(&items, f)
    }
}

impl fmt::Display for LogExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(Format::Text))
    }
}
