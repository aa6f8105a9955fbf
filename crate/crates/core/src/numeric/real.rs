use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use f256::f256;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{NumAssign, ToPrimitive, Zero};

use crate::root::RootOfUnity;

/// Real scalar used by the evaluators.
pub trait Real: Copy + NumAssign + Neg<Output = Self> + PartialOrd + Debug + Display + Send + Sync + 'static {
    const NAME: &'static str;
    /// Decimal digits carried.
    const DIGITS: u32;

    fn epsilon() -> f64;
    fn pi() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn atan2(self, x: Self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    fn from_bigint(n: &BigInt) -> Self;

    fn from_rational(q: &BigRational) -> Self {
        Self::from_bigint(q.numer()) / Self::from_bigint(q.denom())
    }

    fn abs(self) -> Self {
        if self < Self::zero() {
            -self
        } else {
            self
        }
    }
}

impl Real for f64 {
    const NAME: &'static str = "f64";
    const DIGITS: u32 = 15;

    fn epsilon() -> f64 {
        f64::EPSILON
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }
    fn atan2(self, x: Self) -> Self {
        f64::atan2(self, x)
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_bigint(n: &BigInt) -> Self {
        n.to_f64().unwrap_or(f64::NAN)
    }
    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f256 {
    const NAME: &'static str = "f256";
    const DIGITS: u32 = f256::DIGITS;

    fn epsilon() -> f64 {
        // 2^-236
        9.05e-72
    }
    fn pi() -> Self {
        ::f256::consts::PI
    }
    fn from_f64(x: f64) -> Self {
        f256::from(x)
    }
    fn to_f64(self) -> f64 {
        if self.is_nan() {
            return f64::NAN;
        }
        if self.is_zero() {
            return 0.0;
        }
        let (sign, exp, (hi, lo)) = self.as_sign_exp_signif();
        let m = hi as f64 * 2f64.powi(128) + lo as f64;
        let v = scale2(m, exp);
        if sign == 1 {
            -v
        } else {
            v
        }
    }
    fn ln(self) -> Self {
        f256::ln(&self)
    }
    fn sqrt(self) -> Self {
        f256::sqrt(self)
    }
    fn sin_cos(self) -> (Self, Self) {
        f256::sin_cos(&self)
    }
    fn atan2(self, x: Self) -> Self {
        // f256::atan2 mishandles |y| = |x|
        let y = self;
        let half_pi = ::f256::consts::FRAC_PI_2;
        if x.is_zero() {
            return if y.is_zero() {
                f256::ZERO
            } else if y > f256::ZERO {
                half_pi
            } else {
                -half_pi
            };
        }
        if y.abs() <= x.abs() {
            let a = (y / x).atan();
            if x > f256::ZERO {
                a
            } else if y < f256::ZERO {
                a - ::f256::consts::PI
            } else {
                a + ::f256::consts::PI
            }
        } else {
            let a = (x / y).atan();
            if y > f256::ZERO {
                half_pi - a
            } else {
                -half_pi - a
            }
        }
    }
    fn from_i64(n: i64) -> Self {
        f256::from(n)
    }
    fn from_bigint(n: &BigInt) -> Self {
        match n.to_i128() {
            Some(v) => f256::from(v),
            None => f256::from_str(&n.to_string()).unwrap_or(f256::NAN),
        }
    }
}

fn scale2(mut m: f64, mut e: i32) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
    }
    m * 2f64.powi(e)
}

pub(crate) fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

pub(crate) fn creal<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

pub(crate) fn cabs<T: Real>(z: Complex<T>) -> T {
    (z.re * z.re + z.im * z.im).sqrt()
}

pub(crate) fn cabs_f64<T: Real>(z: Complex<T>) -> f64 {
    z.re.to_f64().hypot(z.im.to_f64())
}

/// Principal logarithm, cut along `(-∞, 0]`.
pub(crate) fn cln<T: Real>(z: Complex<T>) -> Complex<T> {
    Complex::new(cabs(z).ln(), z.im.atan2(z.re))
}

pub(crate) fn two_pi_i<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::pi() + T::pi())
}

pub(crate) fn cpowu<T: Real>(z: Complex<T>, k: u32) -> Complex<T> {
    let mut out = creal(T::one());
    for _ in 0..k {
        out *= z;
    }
    out
}

pub fn root_value<T: Real>(r: &RootOfUnity) -> Complex<T> {
    let (a, n) = (r.numerator() as i64, r.order() as i64);
    // exact points on the axes
    if (4 * a) % n == 0 {
        let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][((4 * a / n) % 4) as usize];
        return c(T::from_i64(re), T::from_i64(im));
    }
    let theta = (T::pi() + T::pi()) * T::from_i64(a) / T::from_i64(n);
    let (s, co) = theta.sin_cos();
    c(co, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f256_matches_f64() {
        let pts = [(-1.0, 1.0), (1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (0.3, -0.7), (-0.7, 0.3), (0.0, -2.0), (2.0, 0.0), (-2.0, 0.0), (1e-3, 2e-3), (5.0, -5.0)];
        for (y, x) in pts {
            let a = Real::atan2(f256::from_f64(y), f256::from_f64(x)).to_f64();
            assert!((a - f64::atan2(y, x)).abs() < 1e-15, "atan2({y}, {x}) = {a}");
        }
        for x in [1e-5, 0.3, 1.0, 2.5, 1e4] {
            assert!((Real::ln(f256::from_f64(x)).to_f64() - x.ln()).abs() < 1e-15);
            assert!((Real::sqrt(f256::from_f64(x)).to_f64() - x.sqrt()).abs() < 1e-12);
            let (s, c) = Real::sin_cos(f256::from_f64(x));
            assert!((s.to_f64() - x.sin()).abs() < 1e-12 && (c.to_f64() - x.cos()).abs() < 1e-12);
        }
        let big = BigInt::from(10).pow(40) + 7;
        assert!((f256::from_bigint(&big).to_f64() / 1e40 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn axis_roots_are_exact() {
        let v = root_value::<f256>(&RootOfUnity::new(3, 4).unwrap());
        assert!(v.re.is_zero() && v.im == -f256::ONE);
        let w = root_value::<f64>(&RootOfUnity::new(1, 6).unwrap());
        assert!((w.re - 0.5).abs() < 1e-15);
    }
}
