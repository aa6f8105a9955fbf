//! Words in the letters `ω_σ = dt/(t - σ)` and their shuffle algebra.
//!
//! A word is read left to right as an iterated integral over `[0, 1]`
//! whose leftmost letter is integrated last.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::root::RootOfUnity;

/// A Laurent monomial `ρ · Π x_k^{e_k}` in formal variables, with a root of
/// unity as constant factor. Used both for symbolic letters and for
/// letters specialised to roots of unity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Arg {
    root: RootOfUnity,
    vars: BTreeMap<u32, i32>,
}

impl Arg {
    pub fn one() -> Self {
        Arg { root: RootOfUnity::one(), vars: BTreeMap::new() }
    }

    pub fn root(root: RootOfUnity) -> Self {
        Arg { root, vars: BTreeMap::new() }
    }

    pub fn var(k: u32) -> Self {
        Arg { root: RootOfUnity::one(), vars: BTreeMap::from([(k, 1)]) }
    }

    pub fn root_part(&self) -> RootOfUnity {
        self.root
    }

    pub fn vars(&self) -> &BTreeMap<u32, i32> {
        &self.vars
    }

    /// Pure root of unity, no formal variables.
    pub fn as_root(&self) -> Option<RootOfUnity> {
        self.vars.is_empty().then_some(self.root)
    }

    pub fn is_one(&self) -> bool {
        self.root.is_one() && self.vars.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut vars = self.vars.clone();
        for (k, e) in &other.vars {
            let v = vars.entry(*k).or_insert(0);
            *v += e;
            if *v == 0 {
                vars.remove(k);
            }
        }
        Arg { root: self.root.mul(&other.root), vars }
    }

    pub fn inv(&self) -> Self {
        Arg { root: self.root.inv(), vars: self.vars.iter().map(|(k, e)| (*k, -e)).collect() }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.root.is_one() || self.vars.is_empty() {
            parts.push(self.root.to_string());
        }
        for (k, e) in &self.vars {
            if *e == 1 {
                parts.push(format!("x{k}"));
            } else {
                parts.push(format!("x{k}^{e}"));
            }
        }
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    Zero,
    Sigma(Arg),
}

impl Letter {
    pub fn sigma(a: Arg) -> Self {
        Letter::Sigma(a)
    }

    pub fn root(r: RootOfUnity) -> Self {
        Letter::Sigma(Arg::root(r))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Zero => write!(f, "ω0"),
            Letter::Sigma(a) => write!(f, "ω[{a}]"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().cloned().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Formal integer combination of words.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct WordSum {
    terms: BTreeMap<Word, BigInt>,
}

impl WordSum {
    pub fn zero() -> Self {
        WordSum::default()
    }

    pub fn word(w: Word) -> Self {
        let mut s = WordSum::zero();
        s.add_term(w, BigInt::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Word, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn add_scaled(&mut self, other: &WordSum, c: &BigInt) {
        for (w, d) in &other.terms {
            self.add_term(w.clone(), d * c);
        }
    }

    /// `letters · self`, term by term.
    pub fn prepend(&self, prefix: &Word) -> WordSum {
        WordSum { terms: self.terms.iter().map(|(w, c)| (prefix.concat(w), c.clone())).collect() }
    }

    pub fn shuffle(&self, other: &WordSum) -> WordSum {
        let mut out = WordSum::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_scaled(&shuffle(u, v), &(a * b));
            }
        }
        out
    }
}

impl fmt::Display for WordSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let mag = c.abs();
            if i > 0 {
                write!(f, " ")?;
            }
            if mag.is_one() {
                write!(f, "{sign}{w}")?;
            } else {
                write!(f, "{sign}{mag}·{w}")?;
            }
        }
        Ok(())
    }
}

/// `(ω_a u) ⧢ (ω_b v) = ω_a(u ⧢ ω_b v) + ω_b(ω_a u ⧢ v)`.
pub fn shuffle(u: &Word, v: &Word) -> WordSum {
    let mut memo: HashMap<(usize, usize), WordSum> = HashMap::new();
    shuffle_from(&u.0, &v.0, 0, 0, &mut memo)
}

fn shuffle_from(
    u: &[Letter],
    v: &[Letter],
    i: usize,
    j: usize,
    memo: &mut HashMap<(usize, usize), WordSum>,
) -> WordSum {
    if i == u.len() {
        return WordSum::word(Word(v[j..].to_vec()));
    }
    if j == v.len() {
        return WordSum::word(Word(u[i..].to_vec()));
    }
    if let Some(s) = memo.get(&(i, j)) {
        return s.clone();
    }
    let a = shuffle_from(u, v, i + 1, j, memo).prepend(&Word(vec![u[i].clone()]));
    let mut out = shuffle_from(u, v, i, j + 1, memo).prepend(&Word(vec![v[j].clone()]));
    out.add_scaled(&a, &BigInt::one());
    memo.insert((i, j), out.clone());
    out
}

/// One summand `sign · left ⧢ right` of a shuffle-regularisation rewrite.
#[derive(Clone, Debug)]
pub struct RegTerm {
    pub sign: i32,
    pub left: Word,
    pub right: WordSum,
}

/// `u ω_τ σ_1⋯σ_r = Σ_k (-1)^k [(u ⧢ σ_k⋯σ_1) ω_τ] ⧢ σ_{k+1}⋯σ_r`,
/// returned unexpanded, one entry per `k` (here `left` is the trailing
/// block `σ_{k+1}⋯σ_r` and `right` is `(u ⧢ σ_k⋯σ_1) ω_τ`).
pub fn shuffle_reg_terms(u: &Word, tau: &Letter, sigmas: &[Letter]) -> Vec<RegTerm> {
    let r = sigmas.len();
    (0..=r)
        .map(|k| {
            let head = Word(sigmas[..k].iter().rev().cloned().collect());
            let right = shuffle(u, &head);
            let right = WordSum {
                terms: right
                    .terms
                    .into_iter()
                    .map(|(w, c)| (w.concat(&Word(vec![tau.clone()])), c))
                    .collect(),
            };
            RegTerm {
                sign: if k % 2 == 0 { 1 } else { -1 },
                left: Word(sigmas[k..].to_vec()),
                right,
            }
        })
        .collect()
}

/// Expanded right-hand side of [`shuffle_reg_terms`].
pub fn shuffle_reg_rewrite(u: &Word, tau: &Letter, sigmas: &[Letter]) -> WordSum {
    expand(shuffle_reg_terms(u, tau, sigmas))
}

/// Mirror image: `p_1⋯p_r ω_τ u = Σ_k (-1)^k (p_1⋯p_{r-k}) ⧢ ω_τ(u ⧢ p_r⋯p_{r-k+1})`.
/// Entry `k` carries `left = p_1⋯p_{r-k}`.
pub fn shuffle_reg_terms_reversed(prefix: &[Letter], tau: &Letter, u: &Word) -> Vec<RegTerm> {
    let r = prefix.len();
    (0..=r)
        .map(|k| {
            let moved = Word(prefix[r - k..].iter().rev().cloned().collect());
            let right = shuffle(u, &moved).prepend(&Word(vec![tau.clone()]));
            RegTerm {
                sign: if k % 2 == 0 { 1 } else { -1 },
                left: Word(prefix[..r - k].to_vec()),
                right,
            }
        })
        .collect()
}

pub fn shuffle_reg_rewrite_reversed(prefix: &[Letter], tau: &Letter, u: &Word) -> WordSum {
    expand(shuffle_reg_terms_reversed(prefix, tau, u))
}

fn expand(terms: Vec<RegTerm>) -> WordSum {
    let mut out = WordSum::zero();
    for t in terms {
        let s = WordSum::word(t.left).shuffle(&t.right);
        out.add_scaled(&s, &BigInt::from(t.sign));
    }
    out
}

/// A word `ω_0^{n_d-1} ω_{σ_d} ⋯ ω_0^{n_1-1} ω_{σ_1}` equals
/// `(-1)^d Li_n(y)` with `y_d = 1/σ_d`, `y_i = σ_{i+1}/σ_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiWord {
    pub sign: i32,
    pub indices: Vec<u32>,
    pub args: Vec<Arg>,
}

pub fn word_to_li(w: &Word) -> Result<LiWord> {
    if matches!(w.0.last(), Some(Letter::Zero)) {
        return Err(Error::Precondition(format!("word {w} ends in ω0 and is not a polylogarithm")));
    }
    // Scan right to left collecting (n_i, σ_i).
    let mut sigmas = Vec::new();
    let mut indices = Vec::new();
    for l in w.0.iter().rev() {
        match l {
            Letter::Zero => *indices.last_mut().unwrap() += 1,
            Letter::Sigma(a) => {
                sigmas.push(a.clone());
                indices.push(1);
            }
        }
    }
    let d = sigmas.len();
    let mut args = Vec::with_capacity(d);
    for i in 0..d {
        if i + 1 < d {
            args.push(sigmas[i + 1].div(&sigmas[i]));
        } else {
            args.push(sigmas[i].inv());
        }
    }
    Ok(LiWord { sign: if d % 2 == 0 { 1 } else { -1 }, indices, args })
}

/// Word of `(-1)^d Li_n(y)`.
pub fn li_to_word(indices: &[u32], args: &[Arg]) -> Result<Word> {
    if indices.len() != args.len() || indices.contains(&0) {
        return Err(Error::InvalidIndex(format!("{indices:?}")));
    }
    let d = indices.len();
    let mut letters = Vec::new();
    let mut tail = Arg::one();
    let mut sig = vec![Arg::one(); d];
    for i in (0..d).rev() {
        tail = tail.mul(&args[i]);
        sig[i] = tail.inv();
    }
    for i in (0..d).rev() {
        for _ in 1..indices[i] {
            letters.push(Letter::Zero);
        }
        letters.push(Letter::Sigma(sig[i].clone()));
    }
    Ok(Word(letters))
}
