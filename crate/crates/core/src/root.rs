//! Exact roots of unity `exp(2πi a/N)`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// `exp(2πi · num/order)` with `0 <= num < order` and `gcd(num, order) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootOfUnity {
    order: u32,
    num: u32,
}

impl RootOfUnity {
    pub fn new(num: i64, order: u32) -> Result<Self> {
        if order == 0 {
            return Err(Error::Precondition("root of unity with order 0".into()));
        }
        let n = num.rem_euclid(order as i64) as u32;
        let g = n.gcd(&order);
        let g = if n == 0 { order } else { g };
        Ok(RootOfUnity { order: order / g, num: n / g })
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, num: 0 }
    }

    pub fn minus_one() -> Self {
        RootOfUnity { order: 2, num: 1 }
    }

    pub fn i() -> Self {
        RootOfUnity { order: 4, num: 1 }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    /// The fraction `a/N` in `[0, 1)`.
    pub fn turns(&self) -> BigRational {
        BigRational::new(self.num.into(), self.order.into())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let l = self.order.lcm(&other.order) as u64;
        let a = self.num as u64 * (l / self.order as u64) + other.num as u64 * (l / other.order as u64);
        Self::new((a % l) as i64, l as u32).unwrap()
    }

    pub fn inv(&self) -> Self {
        Self::new(-(self.num as i64), self.order).unwrap()
    }

    pub fn pow(&self, e: i64) -> Self {
        let a = (self.num as i128 * e as i128).rem_euclid(self.order as i128);
        Self::new(a as i64, self.order).unwrap()
    }

    /// `a/N`, the form used on the command line and in JSON.
    pub fn fraction(&self) -> String {
        format!("{}/{}", self.num, self.order)
    }

    /// `(cos, sin)` of the angle, in `f64`.
    pub fn to_f64(&self) -> (f64, f64) {
        let t = 2.0 * std::f64::consts::PI * self.num as f64 / self.order as f64;
        (t.cos(), t.sin())
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.order) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (1, 4) => write!(f, "i"),
            (3, 4) => write!(f, "-i"),
            (a, n) => write!(f, "e(2πi·{a}/{n})"),
        }
    }
}

/// Parses `a/N`, or one of the shorthands `1`, `-1`, `i`, `-i`.
impl FromStr for RootOfUnity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "1" => return Ok(Self::one()),
            "-1" => return Ok(Self::minus_one()),
            "i" => return Ok(Self::i()),
            "-i" => return Ok(Self::i().inv()),
            _ => {}
        }
        let (a, n) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("expected a/N for a root of unity, got {s:?}")))?;
        let a: i64 = a.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let n: u32 = n.trim().parse().map_err(|_| Error::Parse(format!("bad order in {s:?}")))?;
        Self::new(a, n)
    }
}
