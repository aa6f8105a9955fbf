//! Exact Bernoulli numbers, Bernoulli polynomials and binomials with
//! arbitrary integer upper argument.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::RatPolynomial;

/// Largest Bernoulli index served.
pub const BERNOULLI_CAP: u32 = 512;

fn table() -> &'static RwLock<Vec<BigRational>> {
    static TABLE: OnceLock<RwLock<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// `B_k` with `B_1 = -1/2`.
pub fn bernoulli_number(k: u32) -> Result<BigRational> {
    if k > BERNOULLI_CAP {
        return Err(Error::BernoulliCap { index: k, cap: BERNOULLI_CAP });
    }
    let k = k as usize;
    if let Some(b) = table().read().unwrap().get(k) {
        return Ok(b.clone());
    }
    let mut t = table().write().unwrap();
    while t.len() <= k {
        let m = t.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let b = if m > 1 && m % 2 == 1 {
            BigRational::zero()
        } else {
            let mut s = BigRational::zero();
            let mut c = BigInt::one();
            for (j, bj) in t.iter().enumerate() {
                if !bj.is_zero() {
                    s += bj * &c;
                }
                c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            -s / BigInt::from(m + 1)
        };
        t.push(b);
    }
    Ok(t[k].clone())
}

pub(crate) fn bern(k: u32) -> BigRational {
    bernoulli_number(k).expect("Bernoulli index within cap")
}

/// `B_k(x) = sum_j C(k, j) B_{k-j} x^j`.
pub fn bernoulli_polynomial(k: u32) -> Result<RatPolynomial> {
    bernoulli_number(k)?;
    let coeffs = (0..=k)
        .map(|j| bern(k - j) * binomial(k as u64, j as u64))
        .collect();
    Ok(RatPolynomial::new(coeffs))
}

/// `B_k(x)` at a rational point.
pub fn bernoulli_at(k: u32, x: &BigRational) -> Result<BigRational> {
    Ok(bernoulli_polynomial(k)?.eval(x))
}

/// `B_k(1/2)`.
pub fn bernoulli_half(k: u32) -> Result<BigRational> {
    bernoulli_at(k, &BigRational::new(1.into(), 2.into()))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    c
}

/// `C(n, k)` for any integer `n`; zero when `k < 0`.
pub fn signed_binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 {
        return binomial(n as u64, k as u64);
    }
    // C(-r, k) = (-1)^k C(r + k - 1, k)
    let r = (-n) as u64;
    let c = binomial(r + k as u64 - 1, k as u64);
    if k.is_odd() {
        -c
    } else {
        c
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

pub(crate) fn is_integer(q: &BigRational) -> bool {
    q.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Independent oracle: B_n = sum_{k=0}^{n} 1/(k+1) sum_{j=0}^{k} (-1)^j C(k,j) j^n.
    fn worpitzky(n: u32) -> BigRational {
        let mut s = BigRational::zero();
        for k in 0..=n as u64 {
            let mut inner = BigInt::zero();
            for j in 0..=k {
                let t = binomial(k, j) * BigInt::from(j).pow(n);
                if j % 2 == 0 {
                    inner += t;
                } else {
                    inner -= t;
                }
            }
            s += BigRational::new(inner, BigInt::from(k + 1));
        }
        s
    }

    #[test]
    fn matches_independent_formula() {
        for n in 0..=40 {
            assert_eq!(bernoulli_number(n).unwrap(), worpitzky(n), "B_{n}");
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli_number(0).unwrap(), q(1, 1));
        assert_eq!(bernoulli_number(1).unwrap(), q(-1, 2));
        assert_eq!(bernoulli_number(2).unwrap(), q(1, 6));
        assert_eq!(bernoulli_number(12).unwrap(), q(-691, 2730));
        assert_eq!(bernoulli_number(13).unwrap(), q(0, 1));
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            bernoulli_number(BERNOULLI_CAP + 1),
            Err(Error::BernoulliCap { .. })
        ));
    }

    #[test]
    fn polynomials() {
        let b2 = bernoulli_polynomial(2).unwrap();
        assert_eq!(b2.coeffs(), &[q(1, 6), q(-1, 1), q(1, 1)]);
        assert_eq!(bernoulli_half(2).unwrap(), q(-1, 12));
        assert_eq!(bernoulli_half(3).unwrap(), q(0, 1));
        // B_k(x + 1) - B_k(x) = k x^{k-1}
        for k in 1..12u32 {
            let b = bernoulli_polynomial(k).unwrap();
            for x in [q(0, 1), q(1, 3), q(-5, 7)] {
                let lhs = b.eval(&(x.clone() + q(1, 1))) - b.eval(&x);
                let mut rhs = BigRational::from_integer(k.into());
                for _ in 1..k {
                    rhs *= &x;
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(signed_binomial(-1, 3), BigInt::from(-1));
        assert_eq!(signed_binomial(-2, 2), BigInt::from(3));
        assert_eq!(signed_binomial(5, 2), BigInt::from(10));
        assert_eq!(signed_binomial(5, 7), BigInt::zero());
        assert_eq!(signed_binomial(-3, -1), BigInt::zero());
        assert_eq!(signed_binomial(0, 0), BigInt::one());
    }
}
