//! Numerical evaluation of polylogarithms, functional equations and their
//! values at roots of unity, generic over the real scalar.
//!
//! Every value carries an error estimate. Series truncation bounds are
//! rigorous; quadrature and rounding estimates are heuristic.

mod eval;
mod hyperlog;
mod probe;
mod real;
mod sample;
mod series;
mod verify;

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

pub use eval::{eval_ber, CzvEvaluator, Evaluator};
pub use hyperlog::{eval_li_at_roots, eval_li_hyperlog, eval_li_inverse, eval_li_letters, eval_word, HLetter};
pub use probe::{radial_limit, richardson};
pub use real::{root_value, Real};
pub use sample::{ray_distance, sample_domain_point, SamplePoint, RAY_MARGIN};
pub use series::{eval_li_series, hurwitz_zeta, li_at_root_depth1, log_minus, zeta_value};
pub use verify::{compare_lincombs, verify_feq, verify_feq_with, VerifyOptions, VerifyReport};

use real::{cabs_f64, creal};

/// A complex value with an estimate of `|stored - true|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bounded<T> {
    pub value: Complex<T>,
    pub error: f64,
}

impl<T: Real> Bounded<T> {
    pub fn exact(value: Complex<T>) -> Self {
        Bounded { value, error: 0.0 }
    }

    pub fn real(x: T) -> Self {
        Self::exact(creal(x))
    }

    pub fn zero() -> Self {
        Self::real(T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn abs(&self) -> f64 {
        cabs_f64(self.value)
    }

    pub fn re(&self) -> f64 {
        self.value.re.to_f64()
    }

    pub fn im(&self) -> f64 {
        self.value.im.to_f64()
    }

    pub fn to_c64(&self) -> Complex<f64> {
        Complex::new(self.re(), self.im())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let v = self.value * T::from_rational(q);
        let qa = q.abs().to_f64().unwrap_or(f64::INFINITY);
        Bounded { value: v, error: self.error * qa + T::epsilon() * cabs_f64(v) }
    }
}

impl<T: Real> Add for Bounded<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let v = self.value + o.value;
        Bounded { value: v, error: self.error + o.error + T::epsilon() * cabs_f64(v) }
    }
}

impl<T: Real> Sub for Bounded<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<T: Real> Neg for Bounded<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Bounded { value: -self.value, error: self.error }
    }
}

impl<T: Real> Mul for Bounded<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let v = self.value * o.value;
        let error = self.abs() * o.error + o.abs() * self.error + self.error * o.error + T::epsilon() * 2.0 * cabs_f64(v);
        Bounded { value: v, error }
    }
}

impl<T: Real> Bounded<T> {
    pub fn is_exact_zero(&self) -> bool {
        self.value.re.is_zero() && self.value.im.is_zero() && self.error == 0.0
    }
}

#[cfg(test)]
mod tests;
