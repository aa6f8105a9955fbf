//! Symbolic generators `Π ber_{k_i}(z_{i,N}) · Π Li_m(consecutive products)`
//! and their exact rational linear combinations.

mod logs;
mod render;
mod rewrite;
mod serial;

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bernoulli::is_integer;
use crate::error::{Error, Result};

pub use logs::{ber_log_coefficients, expand_ber_to_logs, LogExpansion, LogMonomial};
pub use render::{Format, Render};
pub(crate) use render::{rational as render_rational, signed_sum};
pub use rewrite::{canonical_order, invert_depth1, stuffle_swap_depth2};
pub use serial::{GeneratorJson, LinCombJson};

/// Index vector `(n_1, …, n_d)` with positive entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidIndex("empty index vector".into()));
        }
        if entries.contains(&0) {
            return Err(Error::InvalidIndex(format!("{entries:?} has a zero entry")));
        }
        Ok(Index(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `|n| - d`, the exponent in the parity sign.
    pub fn parity_exponent(&self) -> u32 {
        self.weight() - self.depth() as u32
    }

    /// `(n_2, …, n_d)`.
    pub fn tail(&self) -> Option<Index> {
        (self.0.len() > 1).then(|| Index(self.0[1..].to_vec()))
    }

    /// Every index of weight `1..=max_weight`, by weight then lexicographically.
    pub fn all_up_to_weight(max_weight: u32) -> Vec<Index> {
        let mut out = Vec::new();
        for w in 1..=max_weight {
            let mut level = Vec::new();
            compositions(w, &mut Vec::new(), &mut level);
            level.sort();
            out.extend(level.into_iter().map(Index));
        }
        out
    }
}

fn compositions(rest: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(prefix.clone());
        return;
    }
    for first in 1..=rest {
        prefix.push(first);
        compositions(rest - first, prefix, out);
        prefix.pop();
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Index {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad index entry {p:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Index::new(entries)
    }
}

/// `z_{start} ⋯ z_{end}` (1-based, inclusive), or its reciprocal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ConsProd {
    pub start: u32,
    pub end: u32,
    pub inverted: bool,
}

impl ConsProd {
    pub fn new(start: u32, end: u32) -> Self {
        ConsProd { start, end, inverted: false }
    }

    pub fn single(i: u32) -> Self {
        Self::new(i, i)
    }

    pub fn inv(self) -> Self {
        ConsProd { inverted: !self.inverted, ..self }
    }

    fn check(&self, ambient: u32) -> Result<()> {
        if self.start < 1 || self.start > self.end || self.end > ambient {
            return Err(Error::MalformedGenerator(format!(
                "argument span {}..{} outside 1..{ambient}",
                self.start, self.end
            )));
        }
        Ok(())
    }
}

/// `Li_indices(args)` with one consecutive product per index entry.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LiFactor {
    pub indices: Vec<u32>,
    pub args: Vec<ConsProd>,
}

impl LiFactor {
    pub fn new(indices: Vec<u32>, args: Vec<ConsProd>) -> Self {
        LiFactor { indices, args }
    }

    pub fn depth(&self) -> usize {
        self.indices.len()
    }

    pub fn weight(&self) -> u32 {
        self.indices.iter().sum()
    }

    /// The whole factor is `Li(z_{a,b}, z_{b+1,c}, …)` with no gaps.
    pub fn is_contiguous(&self) -> bool {
        self.args.windows(2).all(|w| w[0].end + 1 == w[1].start)
    }

    pub fn any_inverted(&self) -> bool {
        self.args.iter().any(|a| a.inverted)
    }
}

impl PartialOrd for LiFactor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LiFactor {
    fn cmp(&self, other: &Self) -> Ordering {
        self.args.cmp(&other.args).then_with(|| self.indices.cmp(&other.indices))
    }
}

/// A module generator in `N` ambient variables. Every Ber factor has argument
/// `z_{start,N}`, so a Ber factor is determined by its start index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    ambient: u32,
    bers: Vec<(u32, u32)>,
    lis: Vec<LiFactor>,
}

impl Generator {
    pub fn one(ambient: u32) -> Self {
        Generator { ambient, bers: Vec::new(), lis: Vec::new() }
    }

    /// Builds a generator; Ber factors sharing a start are rejected,
    /// `ber_0` factors are dropped.
    pub fn new(ambient: u32, bers: Vec<(u32, u32)>, lis: Vec<LiFactor>) -> Result<Self> {
        let mut g = Generator::one(ambient);
        for (start, k) in bers {
            g = g.with_ber(start, k)?;
        }
        for f in lis {
            g = g.with_li(f);
        }
        Ok(g)
    }

    pub fn ber(ambient: u32, start: u32, k: u32) -> Self {
        Generator::one(ambient).with_ber(start, k).unwrap()
    }

    pub fn li(ambient: u32, indices: Vec<u32>, args: Vec<ConsProd>) -> Self {
        Generator::one(ambient).with_li(LiFactor::new(indices, args))
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    /// `(start, k)` pairs, sorted by start.
    pub fn bers(&self) -> &[(u32, u32)] {
        &self.bers
    }

    pub fn ber_at(&self, start: u32) -> u32 {
        self.bers.iter().find(|(s, _)| *s == start).map_or(0, |(_, k)| *k)
    }

    pub fn lis(&self) -> &[LiFactor] {
        &self.lis
    }

    pub fn weight(&self) -> u32 {
        self.bers.iter().map(|(_, k)| k).sum::<u32>() + self.lis.iter().map(LiFactor::weight).sum::<u32>()
    }

    pub fn depth(&self) -> usize {
        self.lis.iter().map(LiFactor::depth).sum()
    }

    pub fn with_ber(mut self, start: u32, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(self);
        }
        match self.bers.binary_search_by_key(&start, |(s, _)| *s) {
            Ok(_) => Err(Error::UnsupportedShape(format!(
                "product of two Ber factors in z_{{{start},{}}}",
                self.ambient
            ))),
            Err(pos) => {
                self.bers.insert(pos, (start, k));
                Ok(self)
            }
        }
    }

    pub fn with_li(mut self, f: LiFactor) -> Self {
        let pos = self.lis.binary_search(&f).unwrap_or_else(|p| p);
        self.lis.insert(pos, f);
        self
    }

    pub fn without_ber(&self, start: u32) -> Self {
        let mut g = self.clone();
        g.bers.retain(|(s, _)| *s != start);
        g
    }

    pub fn without_li(&self, pos: usize) -> Self {
        let mut g = self.clone();
        g.lis.remove(pos);
        g
    }

    pub fn mul(&self, other: &Generator) -> Result<Generator> {
        if self.ambient != other.ambient {
            return Err(Error::MalformedGenerator("ambient mismatch in product".into()));
        }
        let mut g = self.clone();
        for &(s, k) in &other.bers {
            g = g.with_ber(s, k)?;
        }
        for f in &other.lis {
            g = g.with_li(f.clone());
        }
        Ok(g)
    }

    pub fn embed(&self, map: &VarMap) -> Generator {
        Generator {
            ambient: map.ambient,
            bers: self.bers.iter().map(|&(s, k)| (map.spans[s as usize - 1].0, k)).collect(),
            lis: {
                let mut v: Vec<LiFactor> = self
                    .lis
                    .iter()
                    .map(|f| LiFactor::new(f.indices.clone(), f.args.iter().map(|a| map.apply(*a)).collect()))
                    .collect();
                v.sort();
                v
            },
        }
    }

    fn sort_key(&self) -> (u32, usize, &[(u32, u32)]) {
        (self.weight(), self.depth(), &self.bers)
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Weight, depth, Ber multidegree, Li indices, then argument spans.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
            .then_with(|| {
                let a = self.lis.iter().map(|f| &f.indices);
                let b = other.lis.iter().map(|f| &f.indices);
                a.cmp(b)
            })
            .then_with(|| {
                let a = self.lis.iter().map(|f| &f.args);
                let b = other.lis.iter().map(|f| &f.args);
                a.cmp(b)
            })
    }
}

/// Variable substitution from a local chain `x_1, …, x_r` into consecutive
/// products of the ambient variables: `x_i ↦ z_{a_i, b_i}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarMap {
    ambient: u32,
    spans: Vec<(u32, u32)>,
}

impl VarMap {
    /// Spans must tile a suffix `z_{a_1} ⋯ z_N` of the ambient chain.
    pub fn new(ambient: u32, spans: Vec<(u32, u32)>) -> Result<Self> {
        let ok = !spans.is_empty()
            && spans.iter().all(|(a, b)| 1 <= *a && a <= b)
            && spans.windows(2).all(|w| w[0].1 + 1 == w[1].0)
            && spans.last().unwrap().1 == ambient;
        if !ok {
            return Err(Error::Precondition(format!("bad variable map {spans:?} into {ambient}")));
        }
        Ok(VarMap { ambient, spans })
    }

    /// `x_i ↦ z_{i+offset}`.
    pub fn shift(local: u32, offset: u32) -> Self {
        VarMap::new(local + offset, (1..=local).map(|i| (i + offset, i + offset)).collect()).unwrap()
    }

    /// `(x_1, …, x_r) ↦ (z_1 z_2, z_3, …, z_{r+1})`.
    pub fn merge_first(local: u32) -> Self {
        let mut spans = vec![(1, 2)];
        spans.extend((2..=local).map(|i| (i + 1, i + 1)));
        VarMap::new(local + 1, spans).unwrap()
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
    }

    pub fn local(&self) -> u32 {
        self.spans.len() as u32
    }

    pub fn apply(&self, c: ConsProd) -> ConsProd {
        ConsProd {
            start: self.spans[c.start as usize - 1].0,
            end: self.spans[c.end as usize - 1].1,
            inverted: c.inverted,
        }
    }
}

/// Finite `ℚ`-combination of generators sharing one ambient dimension,
/// kept merged, zero-free and ordered.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb {
    ambient: u32,
    terms: BTreeMap<Generator, BigRational>,
}

impl LinComb {
    pub fn zero(ambient: u32) -> Self {
        LinComb { ambient, terms: BTreeMap::new() }
    }

    pub fn from_generator(g: Generator) -> Self {
        let mut c = LinComb::zero(g.ambient);
        c.add_term(g, BigRational::one());
        c
    }

    pub fn from_terms(ambient: u32, terms: impl IntoIterator<Item = (Generator, BigRational)>) -> Self {
        let mut c = LinComb::zero(ambient);
        for (g, q) in terms {
            c.add_term(g, q);
        }
        c
    }

    pub fn ambient(&self) -> u32 {
        self.ambient
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

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Generator) -> BigRational {
        self.terms.get(g).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, g: Generator, c: BigRational) {
        assert_eq!(g.ambient, self.ambient, "generator ambient mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &BigRational) {
        for (g, q) in &other.terms {
            self.add_term(g.clone(), q * c);
        }
    }

    pub fn add(&mut self, other: &LinComb) {
        self.add_scaled(other, &BigRational::one());
    }

    pub fn sub(&mut self, other: &LinComb) {
        self.add_scaled(other, &-BigRational::one());
    }

    pub fn scaled(&self, c: &BigRational) -> LinComb {
        let mut out = LinComb::zero(self.ambient);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> LinComb {
        self.scaled(&-BigRational::one())
    }

    /// Multiplies every generator by `g`.
    pub fn mul_generator(&self, g: &Generator) -> Result<LinComb> {
        let mut out = LinComb::zero(self.ambient);
        for (h, q) in &self.terms {
            out.add_term(h.mul(g)?, q.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero(self.ambient);
        for (g, p) in &self.terms {
            for (h, q) in &other.terms {
                out.add_term(g.mul(h)?, p * q);
            }
        }
        Ok(out)
    }

    pub fn embed(&self, map: &VarMap) -> LinComb {
        LinComb::from_terms(map.ambient, self.terms.iter().map(|(g, q)| (g.embed(map), q.clone())))
    }

    /// Common weight of all terms, if homogeneous and nonempty.
    pub fn weight(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Generator::weight);
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    pub fn max_depth(&self) -> usize {
        self.terms.keys().map(Generator::depth).max().unwrap_or(0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(is_integer)
    }

    pub fn has_inverted(&self) -> bool {
        self.terms.keys().any(|g| g.lis.iter().any(LiFactor::any_inverted))
    }

    /// Keeps the terms for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(&Generator) -> bool) -> LinComb {
        LinComb::from_terms(
            self.ambient,
            self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, q)| (g.clone(), q.clone())),
        )
    }
}

/// Merges duplicates, drops zero coefficients and re-sorts.
pub fn normalize(c: &LinComb) -> LinComb {
    LinComb::from_terms(
        c.ambient,
        c.terms.iter().map(|(g, q)| {
            let mut g = g.clone();
            g.lis.sort();
            (g, q.clone())
        }),
    )
}

/// Checks that `g` lies in the weight-`weight`, depth-`≤ depth_bound` part of
/// the generator module: admissible spans, at most one Ber factor per start,
/// Li arguments pairwise disjoint and increasing, nothing inverted.
pub fn validate_generator(g: &Generator, depth_bound: usize, weight: u32) -> Result<()> {
    let n = g.ambient;
    for &(s, k) in &g.bers {
        if s < 1 || s > n || k == 0 {
            return Err(Error::MalformedGenerator(format!("ber_{k} with start {s} in ambient {n}")));
        }
    }
    let mut last_end = 0;
    for f in &g.lis {
        if f.indices.len() != f.args.len() || f.indices.is_empty() {
            return Err(Error::MalformedGenerator("Li arity mismatch".into()));
        }
        if f.indices.contains(&0) {
            return Err(Error::MalformedGenerator("Li index entry 0".into()));
        }
        for a in &f.args {
            a.check(n)?;
            if a.inverted {
                return Err(Error::MalformedGenerator("inverted Li argument".into()));
            }
            if a.start <= last_end {
                return Err(Error::MalformedGenerator("Li arguments overlap or are out of order".into()));
            }
            last_end = a.end;
        }
    }
    if g.depth() > depth_bound {
        return Err(Error::MalformedGenerator(format!("depth {} exceeds {depth_bound}", g.depth())));
    }
    if g.weight() != weight {
        return Err(Error::MalformedGenerator(format!("weight {} differs from {weight}", g.weight())));
    }
    Ok(())
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}
