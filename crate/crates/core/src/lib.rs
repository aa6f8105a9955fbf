//! Parity functional equations for multiple polylogarithms.
//!
//! `Li_n(z) - (-1)^{|n|-d} Li_n(1/z)` is expressed through polylogarithms of
//! depth below `d` in consecutive products of the arguments, with exact
//! integer coefficients. The crate derives these equations symbolically,
//! specialises them to roots of unity and checks them numerically.

pub mod bernoulli;
pub mod czv;
pub mod engine;
pub mod error;
pub mod numeric;
pub mod poly;
pub mod root;
pub mod terms;
pub mod word;

pub use error::{Error, Result};
pub use num_rational::BigRational;

pub type RatPolynomial = poly::Polynomial<BigRational>;
/// Default high-precision scalar (about 71 significant digits).
pub type HpFloat = f256::f256;
pub type HpComplex = num_complex::Complex<HpFloat>;
/// A high-precision value with its error estimate.
pub type HpValue = numeric::Bounded<HpFloat>;
