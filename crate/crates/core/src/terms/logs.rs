use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{int, LiFactor, LinComb};
use crate::bernoulli::{bernoulli_half, binomial, factorial};

/// `(2πi)^p · Π log(-z_{s,N})^{e_s} · Π Li factors`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LogMonomial {
    pub two_pi_i: u32,
    /// `(start, exponent)` sorted by start.
    pub logs: Vec<(u32, u32)>,
    pub lis: Vec<LiFactor>,
}

/// A combination rewritten with `ber_k` replaced by polynomials in
/// `log(-z)` and `2πi`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogExpansion {
    pub ambient: u32,
    pub terms: BTreeMap<LogMonomial, BigRational>,
}

impl LogExpansion {
    pub fn zero(ambient: u32) -> Self {
        LogExpansion { ambient, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, m: LogMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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
}

/// `ber_k = Σ_j C(k,j) B_{k-j}(1/2)/k! · (2πi)^{k-j} · log(-z)^j`.
pub fn ber_log_coefficients(k: u32) -> Vec<(u32, BigRational)> {
    let kf = int(factorial(k));
    (0..=k)
        .map(|j| {
            let c = bernoulli_half(k - j).unwrap() * int(binomial(k as u64, j as u64)) / &kf;
            (j, c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

pub fn expand_ber_to_logs(c: &LinComb) -> LogExpansion {
    let mut out = LogExpansion::zero(c.ambient());
    for (g, q) in c.iter() {
        // (two_pi_i, logs, coefficient)
        let mut partial: Vec<(u32, Vec<(u32, u32)>, BigRational)> = vec![(0, Vec::new(), BigRational::one())];
        for &(start, k) in g.bers() {
            let mut next = Vec::new();
            for (p, logs, c0) in &partial {
                for (j, cj) in ber_log_coefficients(k) {
                    let mut l = logs.clone();
                    if j > 0 {
                        l.push((start, j));
                    }
                    next.push((p + k - j, l, c0 * &cj));
                }
            }
            partial = next;
        }
        for (p, logs, c0) in partial {
            let m = LogMonomial { two_pi_i: p, logs, lis: g.lis().to_vec() };
            out.add_term(m, c0 * q);
        }
    }
    out
}
