use num_complex::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::real::{c, cabs_f64, cln, cpowu, creal, root_value, Real};
use super::Bounded;
use crate::bernoulli::{bernoulli_number, factorial};
use crate::error::{Error, Result};
use crate::root::RootOfUnity;

fn check_index(n: &[u32], len: usize) -> Result<()> {
    if n.is_empty() || n.len() != len || n.contains(&0) {
        return Err(Error::InvalidIndex(format!("Li_{n:?} with {len} arguments")));
    }
    Ok(())
}

/// Smallest `K` whose tail `Σ_{k>K} C(k-1, d-1) r^k / k^m` is at most `goal`.
fn truncation(r: f64, d: usize, m: u32, goal: f64) -> Result<usize> {
    if r == 0.0 {
        return Ok(d);
    }
    let ln_r = r.ln();
    let mut k = d.max(2);
    let mut ln_binom: f64 = (0..d - 1).map(|i| ((k - i) as f64).ln() - ((i + 1) as f64).ln()).sum();
    loop {
        let q = r * (k + 1) as f64 / (k + 2 - d) as f64;
        if q < 1.0 {
            let ln_tail = ln_binom + (k + 1) as f64 * ln_r - m as f64 * ((k + 1) as f64).ln() - (1.0 - q).ln();
            if ln_tail <= goal.ln() {
                return Ok(k);
            }
        }
        if k > 50_000_000 {
            return Err(Error::Precision(format!("series at modulus {r} needs more than {k} terms")));
        }
        // C(k+1, d-1) = C(k, d-1) (k+1) / (k+2-d)
        ln_binom += ((k + 1) as f64).ln() - ((k + 2 - d) as f64).ln();
        k += 1;
    }
}

/// `Li_n(z)` by its defining nested sum, for `|z_i ⋯ z_d| < 1` for all `i`.
///
/// Summed over the tail products `t_i = z_i ⋯ z_d`, so that every partial
/// quantity stays bounded; the truncation bound is rigorous.
pub fn eval_li_series<T: Real>(n: &[u32], z: &[Complex<T>], target: f64) -> Result<Bounded<T>> {
    check_index(n, z.len())?;
    let d = n.len();
    let mut t = z.to_vec();
    for i in (0..d - 1).rev() {
        t[i] = t[i] * t[i + 1];
    }
    let r = t.iter().map(|x| cabs_f64(*x)).fold(0.0, f64::max);
    if !(r < 1.0) {
        return Err(Error::Domain(format!("tail product of modulus {r:.3} ≥ 1 in the series for Li_{n:?}")));
    }
    let k_max = truncation(r, d, n[d - 1], target / 2.0)?;
    let zero = creal(T::zero());
    let mut pow1 = creal(T::one());
    let mut h = vec![zero; d];
    let mut s = vec![zero; d];
    let mut total = zero;
    let (mut abs_sum, mut weighted) = (0.0, 0.0);
    for k in 1..=k_max {
        let inv = T::one() / T::from_i64(k as i64);
        let inv_pow = |m: u32| (0..m).fold(T::one(), |a, _| a * inv);
        // S_i(k) = t_i (S_i(k-1) + H_{i-1}(k-1))
        for i in (1..d).rev() {
            s[i] = t[i] * (s[i] + h[i - 1]);
        }
        pow1 *= t[0];
        h[0] = pow1 * inv_pow(n[0]);
        for i in 1..d {
            h[i] = s[i] * inv_pow(n[i]);
        }
        total += h[d - 1];
        let a = cabs_f64(h[d - 1]);
        abs_sum += a;
        weighted += k as f64 * a;
    }
    let w: u32 = n.iter().sum();
    let rounding = T::epsilon() * (weighted + 16.0 * (d as f64 + w as f64) * abs_sum + 1.0);
    let tail = target / 2.0;
    Ok(Bounded { value: total, error: tail + rounding })
}

/// Hurwitz `ζ(s, a) = Σ_{q≥0} (q + a)^{-s}` for integer `s ≥ 2`, `a > 0`, by
/// Euler-Maclaurin summation.
pub fn hurwitz_zeta<T: Real>(s: u32, a: T, target: f64) -> Result<Bounded<T>> {
    if s < 2 {
        return Err(Error::Divergent(format!("ζ({s}, a)")));
    }
    const M: i64 = 30;
    let pow_neg = |x: T, e: u32| T::one() / (0..e).fold(T::one(), |p, _| p * x);
    let mut sum = T::zero();
    for q in 0..M {
        sum += pow_neg(T::from_i64(q) + a, s);
    }
    let x = T::from_i64(M) + a;
    let xf = x.to_f64();
    sum += pow_neg(x, s - 1) / T::from_i64(s as i64 - 1);
    sum += pow_neg(x, s) / T::from_i64(2);
    // Σ_j B_{2j}/(2j)! (s)_{2j-1} x^{-s-2j+1}; the remainder is below the first omitted term
    let coef = |j: u32| -> Result<BigRational> {
        let rising: BigInt = (0..2 * j - 1).map(|i| BigInt::from(s + i)).product();
        Ok(bernoulli_number(2 * j)? * BigRational::from_integer(rising) / BigRational::from_integer(factorial(2 * j)))
    };
    let inv_x2 = T::one() / (x * x);
    let mut xp = pow_neg(x, s + 1);
    let mut j = 1u32;
    loop {
        let cj = coef(j)?;
        let term = T::from_rational(&cj) * xp;
        sum += term;
        xp *= inv_x2;
        let next = coef(j + 1)?.to_f64().unwrap_or(f64::INFINITY).abs() * xf.powi(-((s + 2 * j + 1) as i32));
        if next < target / 4.0 || next > term.to_f64().abs() {
            let rounding = T::epsilon() * 8.0 * (M as f64 + j as f64);
            return Ok(Bounded { value: creal(sum), error: next + rounding });
        }
        j += 1;
    }
}

/// `ζ(s)` for `s ≥ 2`.
pub fn zeta_value<T: Real>(s: u32, target: f64) -> Result<Bounded<T>> {
    hurwitz_zeta(s, T::one(), target)
}

/// `Li_s(ρ)` at a root of unity: `-log(1 - ρ)` for `s = 1`, otherwise
/// `N^{-s} Σ_{r=1}^N ρ^r ζ(s, r/N)`.
pub fn li_at_root_depth1<T: Real>(s: u32, rho: &RootOfUnity, target: f64) -> Result<Bounded<T>> {
    if s == 0 {
        return Err(Error::InvalidIndex("Li_0".into()));
    }
    if rho.is_one() {
        return zeta_value(s, target);
    }
    let x = root_value::<T>(rho);
    if s == 1 {
        let v = -cln(creal(T::one()) - x);
        return Ok(Bounded { value: v, error: T::epsilon() * 16.0 });
    }
    let n = rho.order();
    let mut total = creal(T::zero());
    let mut err = 0.0;
    let per = target / n as f64;
    let nt = T::from_i64(n as i64);
    for r in 1..=n {
        let h = hurwitz_zeta(s, T::from_i64(r as i64) / nt, per)?;
        total += cpowu(x, r) * h.value;
        err += h.error;
    }
    let scale = T::one() / (0..s).fold(T::one(), |p, _| p * nt);
    let scale_f = (n as f64).powi(-(s as i32));
    Ok(Bounded { value: total * scale, error: err * scale_f + T::epsilon() * 16.0 * n as f64 })
}

/// Principal `log(-x)`.
pub fn log_minus<T: Real>(x: Complex<T>) -> Complex<T> {
    cln(c(-x.re, -x.im))
}

pub(crate) fn is_real_one<T: Real>(x: &Complex<T>) -> bool {
    x.re.is_one() && x.im.is_zero()
}
