//! Limits of functional equations as the variables approach roots of unity.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CzvCombination, CzvSymbol, LiValue};
use crate::bernoulli::{bernoulli_at, factorial};
use crate::engine::{canonicalize, Form, PliResult};
use crate::error::{Error, Result};
use crate::root::RootOfUnity;
use crate::terms::LinComb;
use crate::word::{li_to_word, shuffle, word_to_li, Arg, Letter, Word};

/// Side from which a variable tending to `1` approaches: `log(-z)` tends to
/// `-iπ` from the upper half-plane and to `iπ` from the lower one.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Branch {
    #[default]
    Upper,
    Lower,
}

/// `φ` with `log(-ρ) = 2πi φ`, `φ ∈ [-1/2, 1/2]`.
fn log_minus_turns(r: &RootOfUnity, branch: Branch) -> BigRational {
    let half = BigRational::new(1.into(), 2.into());
    if r.is_one() {
        return match branch {
            Branch::Upper => -half,
            Branch::Lower => half,
        };
    }
    r.turns() - half
}

/// `ber_k(ρ) = c · (iπ)^k`; returns `c`.
pub fn ber_at_root(k: u32, r: &RootOfUnity) -> BigRational {
    ber_at_root_branch(k, r, Branch::Upper) * BigRational::from_integer(BigInt::from(2).pow(k))
}

/// `ber_k(ρ) = c · (2πi)^k`; returns `c`.
pub fn ber_at_root_branch(k: u32, r: &RootOfUnity, branch: Branch) -> BigRational {
    let x = BigRational::new(1.into(), 2.into()) + log_minus_turns(r, branch);
    bernoulli_at(k, &x).expect("Ber index beyond the Bernoulli cap") / BigRational::from_integer(factorial(k))
}

/// `ber_k(ρ) = -Li_k(ρ) - (-1)^k Li_k(1/ρ)`, i.e. `-2 Re Li_k(ρ)` for even
/// and `-2i Im Li_k(ρ)` for odd `k`.
pub fn ber_at_root_as_li(k: u32, r: &RootOfUnity) -> Result<CzvCombination> {
    if k == 0 || (k == 1 && r.is_one()) {
        return Err(Error::Divergent(format!("ber_{k}({r}) has no expression through Li_{k}")));
    }
    let v = LiValue::new(vec![k], vec![*r])?;
    let mut c = CzvCombination::li(v.clone()).neg();
    let s = if k % 2 == 0 { -BigRational::one() } else { BigRational::one() };
    c.add_scaled(&CzvCombination::li(v.conjugate()), &s);
    Ok(c)
}

/// Constant term `x_0` of `Li_m(y_1, …, y_s)` in powers of `log(1 - y_s)` as
/// `y_s → ρ_s`, the other arguments being fixed roots of unity. Convergent
/// limits return the plain value.
pub fn regularized_limit_factor(m: &[u32], roots: &[RootOfUnity]) -> Result<CzvCombination> {
    if m.is_empty() || m.len() != roots.len() {
        return Err(Error::InvalidIndex(format!("Li_{m:?} at {} roots", roots.len())));
    }
    let s = m.len();
    if m[s - 1] > 1 || !roots[s - 1].is_one() {
        return Ok(CzvCombination::li(LiValue::new(m.to_vec(), roots.to_vec())?));
    }
    let args: Vec<Arg> = roots.iter().map(|r| Arg::root(*r)).collect();
    let v = li_to_word(m, &args)?;
    let one = Letter::Sigma(Arg::one());
    let r = v.0.iter().take_while(|l| **l == one).count();
    if r == v.len() {
        return Ok(CzvCombination::zero());
    }
    // v = ω_1^r ω_τ u ; x_0 = (-1)^{s+r} ∫ ω_τ (u ⧢ ω_1^r)
    let tau = v.0[r].clone();
    let u = Word(v.0[r + 1..].to_vec());
    let ones = Word(vec![one; r]);
    let words = shuffle(&u, &ones).prepend(&Word(vec![tau]));
    let mut out = CzvCombination::zero();
    let sign = if (s + r) % 2 == 0 { 1 } else { -1 };
    for (w, c) in words.terms() {
        let lw = word_to_li(w)?;
        let roots: Vec<RootOfUnity> = lw
            .args
            .iter()
            .map(|a| a.as_root().ok_or_else(|| Error::Precondition(format!("symbolic letter in {w}"))))
            .collect::<Result<_>>()?;
        let v = LiValue::new(lw.indices, roots)?;
        out.add_term(
            CzvSymbol::new(0, vec![super::CzvFactor::li(v)]),
            BigRational::from_integer(c * BigInt::from(sign * lw.sign)),
        );
    }
    Ok(out)
}

/// Value of a canonical-form combination in `d` variables at
/// `(ρ_1, …, ρ_d)`, taking the limits `z_1 → ρ_1` first. Divergent Li factors
/// are replaced by their regularized limits.
pub fn specialize_lincomb(c: &LinComb, roots: &[RootOfUnity], branch: Branch) -> Result<CzvCombination> {
    let d = c.ambient() as usize;
    if roots.len() != d {
        return Err(Error::Precondition(format!("{} roots for {d} variables", roots.len())));
    }
    let c = if c.has_inverted() { canonicalize(c)? } else { c.clone() };
    let span = |start: u32, end: u32| {
        roots[start as usize - 1..end as usize].iter().fold(RootOfUnity::one(), |a, r| a.mul(r))
    };
    let mut out = CzvCombination::zero();
    for (g, q) in c.iter() {
        let mut coeff = q.clone();
        let mut pi = 0;
        for &(start, k) in g.bers() {
            coeff *= ber_at_root_branch(k, &span(start, d as u32), branch);
            pi += k;
        }
        if coeff.is_zero() {
            continue;
        }
        let mut term = CzvCombination::from_symbol(CzvSymbol::new(pi, vec![]), coeff);
        for f in g.lis() {
            let rs: Vec<RootOfUnity> = f.args.iter().map(|a| span(a.start, a.end)).collect();
            term = term.mul(&regularized_limit_factor(&f.indices, &rs)?);
            if term.is_zero() {
                break;
            }
        }
        out.add(&term);
    }
    Ok(out)
}

/// `PLi_n(ρ)` as an element of depth `≤ d - 1`; requires `(n_d, ρ_d) ≠ (1, 1)`.
pub fn specialize(eq: &PliResult, roots: &[RootOfUnity]) -> Result<CzvCombination> {
    let d = eq.index.depth();
    if roots.len() != d {
        return Err(Error::Precondition(format!("{} roots for an index of depth {d}", roots.len())));
    }
    if eq.index.entries()[d - 1] == 1 && roots[d - 1].is_one() {
        return Err(Error::Divergent(format!(
            "Li_{{{}}} diverges at last argument 1; need (n_d, z_d) ≠ (1, 1)",
            eq.index
        )));
    }
    let c = match eq.form {
        Form::Canonical => eq.equation.clone(),
        Form::Compact => canonicalize(&eq.equation)?,
    };
    specialize_lincomb(&c, roots, Branch::Upper)
}
