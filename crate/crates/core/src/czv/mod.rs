//! Exact combinations of polylogarithm values at roots of unity.
//!
//! A monomial is `(2πi)^p` times a product of factors, each either an even
//! zeta value `ζ(2k)` (with `ζ(0) = -1/2` kept symbolic) or a convergent
//! `Li_n(ρ_1, …, ρ_d)` at roots of unity.

mod closed;
mod specialize;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bernoulli::{bernoulli_number, factorial, is_integer};
use crate::error::{Error, Result};
use crate::root::RootOfUnity;
use crate::terms::{render_rational, signed_sum, Format, Render};

pub use closed::{
    alt_depth2, bernoulli_identity_check, fourth_root_lhs, fourth_root_rhs, integrality_check, mzv_depth2_even_relation,
    reduce_mzv_depth2, reduce_mzv_depth3, IntegerCoefficients,
};
pub use specialize::{
    ber_at_root, ber_at_root_as_li, ber_at_root_branch, regularized_limit_factor, specialize, specialize_lincomb, Branch,
};

/// `Li_n(ρ)` with `(n_d, ρ_d) ≠ (1, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LiValue {
    indices: Vec<u32>,
    roots: Vec<RootOfUnity>,
}

impl LiValue {
    pub fn new(indices: Vec<u32>, roots: Vec<RootOfUnity>) -> Result<Self> {
        if indices.is_empty() || indices.len() != roots.len() || indices.contains(&0) {
            return Err(Error::InvalidIndex(format!("Li_{indices:?} at {} roots", roots.len())));
        }
        if *indices.last().unwrap() == 1 && roots.last().unwrap().is_one() {
            return Err(Error::Divergent(format!("Li_{indices:?} with last argument 1")));
        }
        Ok(LiValue { indices, roots })
    }

    /// `ζ(n)`.
    pub fn mzv(indices: Vec<u32>) -> Result<Self> {
        let roots = vec![RootOfUnity::one(); indices.len()];
        Self::new(indices, roots)
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn roots(&self) -> &[RootOfUnity] {
        &self.roots
    }

    pub fn depth(&self) -> usize {
        self.indices.len()
    }

    pub fn weight(&self) -> u32 {
        self.indices.iter().sum()
    }

    pub fn is_mzv(&self) -> bool {
        self.roots.iter().all(RootOfUnity::is_one)
    }

    /// `Li_n(1/ρ)`, the complex conjugate.
    pub fn conjugate(&self) -> Self {
        LiValue { indices: self.indices.clone(), roots: self.roots.iter().map(RootOfUnity::inv).collect() }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum CzvFactor {
    /// `ζ(2k)`; `ζ(0) = -1/2`.
    EvenZeta(u32),
    Li(LiValue),
}

impl CzvFactor {
    /// Depth-one even MZV become [`CzvFactor::EvenZeta`].
    pub fn li(v: LiValue) -> Self {
        if v.depth() == 1 && v.is_mzv() && v.indices[0] % 2 == 0 {
            CzvFactor::EvenZeta(v.indices[0])
        } else {
            CzvFactor::Li(v)
        }
    }

    pub fn zeta(indices: Vec<u32>) -> Result<Self> {
        Ok(Self::li(LiValue::mzv(indices)?))
    }

    pub fn weight(&self) -> u32 {
        match self {
            CzvFactor::EvenZeta(k) => *k,
            CzvFactor::Li(v) => v.weight(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            CzvFactor::EvenZeta(_) => 0,
            CzvFactor::Li(v) => v.depth(),
        }
    }
}

/// `(2πi)^{two_pi_i} · Π factors`, factors sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct CzvSymbol {
    two_pi_i: u32,
    factors: Vec<CzvFactor>,
}

impl CzvSymbol {
    pub fn one() -> Self {
        CzvSymbol::default()
    }

    pub fn new(two_pi_i: u32, mut factors: Vec<CzvFactor>) -> Self {
        factors.sort();
        CzvSymbol { two_pi_i, factors }
    }

    pub fn two_pi_i(&self) -> u32 {
        self.two_pi_i
    }

    pub fn factors(&self) -> &[CzvFactor] {
        &self.factors
    }

    pub fn weight(&self) -> u32 {
        self.two_pi_i + self.factors.iter().map(CzvFactor::weight).sum::<u32>()
    }

    pub fn depth(&self) -> usize {
        self.factors.iter().map(CzvFactor::depth).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        Self::new(self.two_pi_i + other.two_pi_i, f)
    }
}

/// `ℚ`-combination of [`CzvSymbol`]s, merged and zero-free.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CzvCombination {
    terms: BTreeMap<CzvSymbol, BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `ζ(2k) = -B_{2k} (2πi)^{2k} / (2 (2k)!)`, as the rational factor.
pub fn even_zeta_coefficient(two_k: u32) -> BigRational {
    -bernoulli_number(two_k).expect("even zeta index beyond the Bernoulli cap")
        / BigRational::from_integer(factorial(two_k) * BigInt::from(2))
}

impl CzvCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_symbol(CzvSymbol::one(), c)
    }

    pub fn from_symbol(s: CzvSymbol, c: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(s, c);
        out
    }

    pub fn factor(f: CzvFactor) -> Self {
        Self::from_symbol(CzvSymbol::new(0, vec![f]), BigRational::one())
    }

    pub fn li(v: LiValue) -> Self {
        Self::factor(CzvFactor::li(v))
    }

    pub fn zeta(indices: &[u32]) -> Result<Self> {
        Ok(Self::factor(CzvFactor::zeta(indices.to_vec())?))
    }

    pub fn two_pi_i_power(p: u32) -> Self {
        Self::from_symbol(CzvSymbol::new(p, vec![]), BigRational::one())
    }

    pub fn add_term(&mut self, s: CzvSymbol, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(s).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigRational) {
        for (s, v) in &other.terms {
            self.add_term(s.clone(), v * c);
        }
    }

    pub fn add(&mut self, other: &Self) {
        self.add_scaled(other, &BigRational::one());
    }

    pub fn sub(&mut self, other: &Self) {
        self.add_scaled(other, &-BigRational::one());
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-BigRational::one())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, p) in &self.terms {
            for (b, r) in &other.terms {
                out.add_term(a.mul(b), p * r);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CzvSymbol, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &CzvSymbol) -> BigRational {
        self.terms.get(s).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Common weight, or `None` when empty or inhomogeneous.
    pub fn weight(&self) -> Option<u32> {
        let mut ws = self.terms.keys().map(CzvSymbol::weight);
        let w = ws.next()?;
        ws.all(|v| v == w).then_some(w)
    }

    pub fn max_depth(&self) -> usize {
        self.terms.keys().map(CzvSymbol::depth).max().unwrap_or(0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    /// Applies `f` to every factor and multiplies the results out.
    fn map_factors(&self, f: impl Fn(&CzvFactor) -> CzvCombination) -> Self {
        let mut out = Self::zero();
        for (s, c) in &self.terms {
            let mut acc = Self::from_symbol(CzvSymbol::new(s.two_pi_i, vec![]), c.clone());
            for x in &s.factors {
                acc = acc.mul(&f(x));
            }
            out.add(&acc);
        }
        out
    }

    /// Replaces `ζ(0)` by `-1/2`.
    pub fn fold_zeta_zero(&self) -> Self {
        self.map_factors(|x| match x {
            CzvFactor::EvenZeta(0) => Self::constant(BigRational::new((-1).into(), 2.into())),
            _ => Self::factor(x.clone()),
        })
    }

    /// Even zeta values become rational multiples of `(2πi)^{2k}` and
    /// `Li_k(-1)`, `k ≥ 2`, becomes `(2^{1-k} - 1) ζ(k)`.
    pub fn normalized(&self) -> Self {
        self.map_factors(|x| match x {
            CzvFactor::EvenZeta(k) => {
                Self::from_symbol(CzvSymbol::new(*k, vec![]), even_zeta_coefficient(*k))
            }
            CzvFactor::Li(v) if v.depth() == 1 && v.indices[0] >= 2 && v.roots[0] == RootOfUnity::minus_one() => {
                let k = v.indices[0];
                let c = BigRational::new(BigInt::one(), BigInt::from(2).pow(k - 1)) - BigRational::one();
                let z = Self::zeta(&[k]).unwrap().normalized();
                z.scaled(&c)
            }
            _ => Self::factor(x.clone()),
        })
    }
}

fn root_render(r: &RootOfUnity, f: Format) -> String {
    match f {
        Format::Text => r.fraction(),
        Format::Latex => match (r.numerator(), r.order()) {
            (0, _) => "1".into(),
            (1, 2) => "-1".into(),
            (1, 4) => "i".into(),
            (3, 4) => "-i".into(),
            (a, n) => format!("e^{{2\\pi i\\cdot {a}/{n}}}"),
        },
    }
}

impl Render for RootOfUnity {
    fn render(&self, f: Format) -> String {
        root_render(self, f)
    }
}

fn join_u32(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl Render for LiValue {
    fn render(&self, f: Format) -> String {
        if self.is_mzv() {
            return match f {
                Format::Text => format!("ζ({})", join_u32(&self.indices)),
                Format::Latex => format!("\\zeta({})", join_u32(&self.indices)),
            };
        }
        let args: Vec<String> = self.roots.iter().map(|r| root_render(r, f)).collect();
        match f {
            Format::Text => format!("Li_{{{}}}({})", join_u32(&self.indices), args.join(", ")),
            Format::Latex => format!("\\mathrm{{Li}}_{{{}}}\\left({}\\right)", join_u32(&self.indices), args.join(", ")),
        }
    }
}

impl Render for CzvFactor {
    fn render(&self, f: Format) -> String {
        match (self, f) {
            (CzvFactor::EvenZeta(k), Format::Text) => format!("ζ({k})"),
            (CzvFactor::EvenZeta(k), Format::Latex) => format!("\\zeta({k})"),
            (CzvFactor::Li(v), _) => v.render(f),
        }
    }
}

impl Render for CzvSymbol {
    fn render(&self, f: Format) -> String {
        let mut parts = Vec::new();
        if self.two_pi_i > 0 {
            let b = match f {
                Format::Text => "(2πi)",
                Format::Latex => "(2\\pi i)",
            };
            parts.push(match (self.two_pi_i, f) {
                (1, _) => b.to_string(),
                (p, Format::Text) => format!("{b}^{p}"),
                (p, Format::Latex) => format!("{b}^{{{p}}}"),
            });
        }
        // Repeated factors as powers.
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i + 1;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            let base = self.factors[i].render(f);
            parts.push(match (j - i, f) {
                (1, _) => base,
                (e, Format::Text) => format!("{base}^{e}"),
                (e, Format::Latex) => format!("{base}^{{{e}}}"),
            });
            i = j;
        }
        match f {
            Format::Text => parts.join(" "),
            Format::Latex => parts.join("\\,"),
        }
    }
}

impl Render for CzvCombination {
    fn render(&self, f: Format) -> String {
        let items: Vec<(BigRational, String)> = self.terms.iter().map(|(s, c)| (c.clone(), s.render(f))).collect();
        signed_sum(&items, f)
    }
}

impl fmt::Display for CzvCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(Format::Text))
    }
}

impl fmt::Display for LiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(Format::Text))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FactorJson {
    Zeta(u32),
    Li { index: Vec<u32>, roots: Vec<String> },
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    two_pi_i: u32,
    factors: Vec<FactorJson>,
}

impl Serialize for CzvCombination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(sym, c)| TermJson {
                coeff: render_rational(c, Format::Text),
                two_pi_i: sym.two_pi_i,
                factors: sym
                    .factors
                    .iter()
                    .map(|x| match x {
                        CzvFactor::EvenZeta(k) => FactorJson::Zeta(*k),
                        CzvFactor::Li(v) => FactorJson::Li {
                            index: v.indices.clone(),
                            roots: v.roots.iter().map(RootOfUnity::fraction).collect(),
                        },
                    })
                    .collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CzvCombination {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let terms = Vec::<TermJson>::deserialize(d)?;
        let mut out = CzvCombination::zero();
        for t in terms {
            let c: BigRational = t.coeff.parse().map_err(D::Error::custom)?;
            let mut factors = Vec::new();
            for x in t.factors {
                factors.push(match x {
                    FactorJson::Zeta(k) => CzvFactor::EvenZeta(k),
                    FactorJson::Li { index, roots } => {
                        let roots = roots
                            .iter()
                            .map(|r| r.parse::<RootOfUnity>())
                            .collect::<Result<Vec<_>>>()
                            .map_err(D::Error::custom)?;
                        CzvFactor::li(LiValue::new(index, roots).map_err(D::Error::custom)?)
                    }
                });
            }
            out.add_term(CzvSymbol::new(t.two_pi_i, factors), c);
        }
        Ok(out)
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    q(n)
}

#[cfg(test)]
mod tests;
