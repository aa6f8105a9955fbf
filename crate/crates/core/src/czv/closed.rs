//! Explicit reductions of MZV and alternating sums, and related checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{rat, CzvCombination, CzvFactor, CzvSymbol, LiValue};
use crate::bernoulli::{bernoulli_number, bernoulli_polynomial, binomial, factorial, signed_binomial};
use crate::engine::{pli, PliResult};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::root::RootOfUnity;
use crate::terms::{Index, LinComb};
use crate::RatPolynomial;

fn int(c: BigInt) -> BigRational {
    BigRational::from_integer(c)
}

fn sign(e: u32) -> i64 {
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn zeta(idx: &[u32]) -> CzvFactor {
    CzvFactor::zeta(idx.to_vec()).expect("convergent MZV")
}

fn term(factors: Vec<CzvFactor>) -> CzvSymbol {
    CzvSymbol::new(0, factors)
}

/// `ζ(n_1, n_2)` for odd weight and `n_2 ≥ 2` through products
/// `ζ(2s) ζ(k)`; `ζ(0) = -1/2` stays symbolic so all coefficients are integers.
pub fn reduce_mzv_depth2(n1: u32, n2: u32) -> Result<CzvCombination> {
    let w = n1 + n2;
    if n1 == 0 || n2 < 2 {
        return Err(Error::Precondition(format!("ζ({n1},{n2}) needs n1 ≥ 1, n2 ≥ 2")));
    }
    if w % 2 == 0 {
        return Err(Error::Precondition(format!(
            "ζ({n1},{n2}) has even weight; use mzv_depth2_even_relation for the even-weight relation"
        )));
    }
    let mut out = depth2_sum(n1, n2, 3);
    out.add_term(term(vec![CzvFactor::EvenZeta(0), zeta(&[w])]), rat(1));
    Ok(out)
}

/// `(-1)^{n_1} Σ_{2s+k=w, k ≥ k_min} ζ(2s) ζ(k) [C(k-1,n_1-1) + C(k-1,n_2-1) - δ_{k,n_1}]`.
fn depth2_sum(n1: u32, n2: u32, k_min: u32) -> CzvCombination {
    let w = n1 + n2;
    let mut out = CzvCombination::zero();
    let mut k = w;
    loop {
        if k < k_min {
            break;
        }
        let s2 = w - k;
        let mut c = binomial((k - 1) as u64, (n1 - 1) as u64) + binomial((k - 1) as u64, (n2 - 1) as u64);
        if k == n1 {
            c -= 1;
        }
        out.add_term(term(vec![CzvFactor::EvenZeta(s2), zeta(&[k])]), int(c * sign(n1)));
        if k < 2 {
            break;
        }
        k -= 2;
    }
    out
}

/// Even weight: `0 = depth2_sum(k ≥ 2) + ζ(w)/2`, returned as the right-hand side.
pub fn mzv_depth2_even_relation(n1: u32, n2: u32) -> Result<CzvCombination> {
    let w = n1 + n2;
    if n1 == 0 || n2 < 2 || w % 2 == 1 {
        return Err(Error::Precondition(format!("({n1},{n2}) needs even weight and n2 ≥ 2")));
    }
    let mut out = depth2_sum(n1, n2, 2);
    out.add_term(term(vec![CzvFactor::EvenZeta(0), zeta(&[w])]), rat(-1));
    Ok(out)
}

/// `ζ(n_1, n_2, n_3)` for even weight and `n_3 ≥ 2` in depth `≤ 2`, with
/// `ζ(0)` kept symbolic.
pub fn reduce_mzv_depth3(n1: u32, n2: u32, n3: u32) -> Result<CzvCombination> {
    let w = n1 + n2 + n3;
    if n1 == 0 || n2 == 0 || n3 < 2 || w % 2 == 1 {
        return Err(Error::Precondition(format!("ζ({n1},{n2},{n3}) needs n3 ≥ 2 and even weight")));
    }
    let z0 = CzvFactor::EvenZeta(0);
    let mut out = CzvCombination::zero();
    for idx in [vec![n1 + n2, n3], vec![n1, n2 + n3], vec![w]] {
        out.add_term(term(vec![z0.clone(), zeta(&idx)]), rat(1));
    }
    let b = |n: u32, k: u32| binomial((n - 1) as u64, (k - 1) as u64);
    // Pairs (μ, ν, 2s) with μ + ν + 2s = w.
    let pairs = |mu_min: u32, nu_min: u32| {
        let mut v = Vec::new();
        for mu in mu_min..=w {
            for nu in nu_min..=w.saturating_sub(mu) {
                let rest = w - mu - nu;
                if rest % 2 == 0 {
                    v.push((mu, nu, rest));
                }
            }
        }
        v
    };
    for (mu, nu, s2) in pairs(n2, n3) {
        let c = b(mu, n2) * b(nu, n3) * sign(n1);
        out.add_term(term(vec![CzvFactor::EvenZeta(s2), zeta(&[mu, nu])]), int(c));
    }
    for (mu, nu, s2) in pairs(n3, n1 + 1) {
        let c = b(mu, n3) * b(nu, n1) * sign(n2) * sign(mu);
        out.add_term(term(vec![CzvFactor::EvenZeta(s2), zeta(&[mu]), zeta(&[nu])]), int(c));
    }
    for (mu, nu, s2) in pairs(n2, n1 + 1) {
        let c = b(mu, n2) * b(nu, n1) * sign(n3);
        out.add_term(term(vec![CzvFactor::EvenZeta(s2), zeta(&[mu, nu])]), int(c));
    }
    for nu in (n2 + 1)..=(w - n1) {
        let rest = w - n1 - nu;
        if rest % 2 == 1 {
            continue;
        }
        let c = -b(nu, n2) * sign(n3);
        out.add_term(term(vec![CzvFactor::EvenZeta(rest), zeta(&[n1, nu])]), int(c.clone()));
        out.add_term(term(vec![CzvFactor::EvenZeta(rest), zeta(&[n1 + nu])]), int(c));
    }
    Ok(out)
}

fn pm_one(s: i8) -> Result<RootOfUnity> {
    match s {
        1 => Ok(RootOfUnity::one()),
        -1 => Ok(RootOfUnity::minus_one()),
        _ => Err(Error::Precondition(format!("sign {s} is not ±1"))),
    }
}

/// `Li_k(ρ)` for `ρ = ±1` with `Li_0(±1) = -1/2 = ζ(0)` and the divergent
/// `Li_1(1)` regularized to `0`.
fn li_pm(k: u32, r: RootOfUnity) -> CzvCombination {
    if k == 0 {
        return CzvCombination::factor(CzvFactor::EvenZeta(0));
    }
    match LiValue::new(vec![k], vec![r]) {
        Ok(v) => CzvCombination::li(v),
        Err(_) => CzvCombination::zero(),
    }
}

/// `Li_{n_1,n_2}(s_1, s_2)` with `s_i = ±1` for odd weight, `(n_2, s_2) ≠ (1, 1)`.
pub fn alt_depth2(n1: u32, n2: u32, s1: i8, s2: i8) -> Result<CzvCombination> {
    let (z1, z2) = (pm_one(s1)?, pm_one(s2)?);
    let w = n1 + n2;
    if n1 == 0 || n2 == 0 || w % 2 == 0 {
        return Err(Error::Precondition(format!("({n1},{n2}) is not an odd-weight index")));
    }
    if n2 == 1 && z2.is_one() {
        return Err(Error::Divergent("(n_2, z_2) = (1, 1)".into()));
    }
    let z12 = z1.mul(&z2);
    let mut out = CzvCombination::zero();
    for s2 in (0..w).step_by(2) {
        let k = w - s2;
        let mut inner = li_pm(k, z1).scaled(&int(binomial((k - 1) as u64, (n1 - 1) as u64)));
        inner.add_scaled(&li_pm(k, z2), &int(binomial((k - 1) as u64, (n2 - 1) as u64)));
        out.add_scaled(&li_pm(s2, z12).mul(&inner), &rat(sign(n1)));
    }
    out.add(&CzvCombination::factor(CzvFactor::EvenZeta(0)).mul(&li_pm(w, z12)));
    if n2 % 2 == 0 {
        out.add(&li_pm(n1, z1).mul(&li_pm(n2, z2)));
    }
    Ok(out)
}

/// Types whose coefficients can be tested for integrality.
pub trait IntegerCoefficients {
    fn has_integer_coefficients(&self) -> bool;
}

impl IntegerCoefficients for CzvCombination {
    fn has_integer_coefficients(&self) -> bool {
        CzvCombination::has_integer_coefficients(self)
    }
}

impl IntegerCoefficients for LinComb {
    fn has_integer_coefficients(&self) -> bool {
        LinComb::has_integer_coefficients(self)
    }
}

impl IntegerCoefficients for PliResult {
    fn has_integer_coefficients(&self) -> bool {
        self.equation.has_integer_coefficients()
    }
}

/// All coefficients integral (in the Ber basis, resp. with `ζ(0)` symbolic).
pub fn integrality_check<T: IntegerCoefficients + ?Sized>(c: &T) -> bool {
    c.has_integer_coefficients()
}

type Bivariate = Polynomial<RatPolynomial>;

fn in_x(p: &RatPolynomial) -> Bivariate {
    p.map(|c| RatPolynomial::constant(c.clone()))
}

fn in_y(p: &RatPolynomial) -> Bivariate {
    Bivariate::constant(p.clone())
}

/// Exact check of
/// `Σ_μ C(w,μ) B_{w-μ}(x+y) [C(-n_1, μ-n_1) B_μ(x) + C(-n_2, μ-n_2) B_μ(y) - δ_{μ,0}]
///  = C(w, n_1) B_{n_1}(x) B_{n_2}(y)`.
pub fn bernoulli_identity_check(n1: u32, n2: u32) -> bool {
    let w = n1 + n2;
    let x = Bivariate::x();
    let y = in_y(&RatPolynomial::x());
    let xy = x + y;
    let shifted = |k: u32| {
        bernoulli_polynomial(k)
            .unwrap()
            .eval_in(&xy, |c| Bivariate::constant(RatPolynomial::constant(c.clone())))
    };
    let konst = |c: BigInt| Bivariate::constant(RatPolynomial::constant(int(c)));
    let mut lhs = Bivariate::zero();
    for mu in 0..=w {
        let bx = in_x(&bernoulli_polynomial(mu).unwrap());
        let by = in_y(&bernoulli_polynomial(mu).unwrap());
        let mut bracket = konst(signed_binomial(-(n1 as i64), mu as i64 - n1 as i64)) * bx
            + konst(signed_binomial(-(n2 as i64), mu as i64 - n2 as i64)) * by;
        if mu == 0 {
            bracket = bracket - konst(BigInt::one());
        }
        lhs = lhs + konst(binomial(w as u64, mu as u64)) * shifted(w - mu) * bracket;
    }
    let rhs = konst(binomial(w as u64, n1 as u64))
        * in_x(&bernoulli_polynomial(n1).unwrap())
        * in_y(&bernoulli_polynomial(n2).unwrap());
    lhs == rhs
}

fn i_roots() -> (RootOfUnity, RootOfUnity) {
    (RootOfUnity::i(), RootOfUnity::i().inv())
}

/// `PLi_{n,1}(i, i) + PLi_{n,1}(i, -i)` specialised from the engine.
pub fn fourth_root_lhs(n: u32) -> Result<CzvCombination> {
    let eq = pli(&Index::new(vec![n, 1])?, crate::engine::Form::Canonical)?;
    let (i, mi) = i_roots();
    let mut out = super::specialize(&eq, &[i, i])?;
    out.add(&super::specialize(&eq, &[i, mi])?);
    Ok(out)
}

/// `-2ni Im Li_{n+1}(i) - 2i Σ_{s=1}^{(n-1)/2} (iπ)^{2s} (4^s - 1) B_{2s}/(2s)! Im Li_{n+1-2s}(i)`
/// for odd `n`, using `2i Im Li_k(i) = Li_k(i) - Li_k(-i)`.
pub fn fourth_root_rhs(n: u32) -> Result<CzvCombination> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("n = {n} must be odd")));
    }
    let (i, mi) = i_roots();
    let two_i_im = |k: u32| -> Result<CzvCombination> {
        let mut c = CzvCombination::li(LiValue::new(vec![k], vec![i])?);
        c.sub(&CzvCombination::li(LiValue::new(vec![k], vec![mi])?));
        Ok(c)
    };
    let mut out = two_i_im(n + 1)?.scaled(&rat(-(n as i64)));
    for s in 1..=(n - 1) / 2 {
        let four_s = BigInt::from(4).pow(s);
        // (iπ)^{2s} = (2πi)^{2s} / 4^s
        let c = -BigRational::new(four_s.clone() - 1, four_s) * bernoulli_number(2 * s)?
            / int(factorial(2 * s));
        let t = CzvCombination::two_pi_i_power(2 * s).mul(&two_i_im(n + 1 - 2 * s)?);
        out.add_scaled(&t, &c);
    }
    Ok(out)
}
