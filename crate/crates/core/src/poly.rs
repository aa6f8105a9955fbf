//! Dense univariate polynomials over an arbitrary commutative ring.
//!
//! Nesting works: `Polynomial<Polynomial<BigRational>>` is a bivariate
//! polynomial, which is how the two-variable Bernoulli identities are checked.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Polynomial<C> {
    coeffs: Vec<C>,
}

impl<C: Ring> Polynomial<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> C {
        self.coeffs.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn eval(&self, x: &C) -> C {
        self.eval_in(x, |c| c.clone())
    }

    /// Horner evaluation in a ring `R` that the coefficients embed into.
    pub fn eval_in<R: Ring>(&self, x: &R, embed: impl Fn(&C) -> R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    pub fn map<D: Ring>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// `p(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.eval_in(q, |c| Self::constant(c.clone()))
    }
}

impl<C: Ring> Zero for Polynomial<C> {
    fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<C: Ring> One for Polynomial<C> {
    fn one() -> Self {
        Self::constant(C::one())
    }
}

impl<C: Ring> Add for Polynomial<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Sub for Polynomial<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<C: Ring> Neg for Polynomial<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Polynomial { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<C: Ring> Mul for Polynomial<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn trims_and_multiplies() {
        let p = Polynomial::new(vec![q(1, 1), q(1, 1), q(0, 1)]);
        assert_eq!(p.degree(), Some(1));
        let sq = p.clone() * p;
        assert_eq!(sq.coeffs(), &[q(1, 1), q(2, 1), q(1, 1)]);
    }

    #[test]
    fn nested_is_bivariate() {
        type P = Polynomial<BigRational>;
        let y = Polynomial::constant(P::x());
        let x = Polynomial::<P>::x();
        let s = (x.clone() + y.clone()) * (x - y);
        // x^2 - y^2
        assert_eq!(s.coeff(2), P::one());
        assert_eq!(s.coeff(1), P::zero());
        assert_eq!(s.coeff(0), -(P::x() * P::x()));
    }

    #[test]
    fn compose_shift() {
        let p = Polynomial::new(vec![q(0, 1), q(0, 1), q(1, 1)]);
        let shift = Polynomial::new(vec![q(1, 2), q(1, 1)]);
        let r = p.compose(&shift);
        assert_eq!(r.coeffs(), &[q(1, 4), q(1, 1), q(1, 1)]);
        assert_eq!(r.eval(&q(1, 2)), q(1, 1));
    }
}
