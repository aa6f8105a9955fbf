use std::collections::HashMap;

use num_complex::Complex;
use num_traits::Zero;

use super::hyperlog::{eval_li_at_roots, eval_li_hyperlog};
use super::real::{cabs_f64, cpowu, creal, two_pi_i, Real};
use super::series::{eval_li_series, li_at_root_depth1, log_minus};
use super::Bounded;
use crate::czv::{even_zeta_coefficient, CzvCombination, CzvFactor, CzvSymbol, LiValue};
use crate::error::{Error, Result};
use crate::terms::{ber_log_coefficients, ConsProd, Generator, LiFactor, LinComb, LogExpansion, LogMonomial};

/// Largest tail modulus for which the defining series is preferred over
/// the iterated integral.
const SERIES_RADIUS: f64 = 0.92;

/// `ber_k(x) = (2πi)^k/k! B_k(1/2 + log(-x)/(2πi))`, principal branch.
pub fn eval_ber<T: Real>(k: u32, x: Complex<T>) -> Bounded<T> {
    let l = log_minus(x);
    let tpi = two_pi_i::<T>();
    let mut out = Bounded::zero();
    for (j, c) in ber_log_coefficients(k) {
        let v = cpowu(tpi, k - j) * cpowu(l, j);
        out = out + Bounded::exact(v).scale(&c);
    }
    out
}

/// Evaluates generators and combinations at a fixed binding of the ambient
/// variables, caching factor values.
pub struct Evaluator<T: Real> {
    z: Vec<Complex<T>>,
    target: f64,
    lis: HashMap<LiFactor, Bounded<T>>,
    bers: HashMap<(u32, u32), Bounded<T>>,
}

impl<T: Real> Evaluator<T> {
    pub fn new(z: Vec<Complex<T>>, target: f64) -> Self {
        Evaluator { z, target, lis: HashMap::new(), bers: HashMap::new() }
    }

    pub fn point(&self) -> &[Complex<T>] {
        &self.z
    }

    fn check_span(&self, start: u32, end: u32) -> Result<()> {
        if start == 0 || end < start || end as usize > self.z.len() {
            return Err(Error::Precondition(format!("span {start}..{end} over {} variables", self.z.len())));
        }
        Ok(())
    }

    /// `z_{i,j}`, or its inverse.
    pub fn cons(&self, c: &ConsProd) -> Result<Complex<T>> {
        self.check_span(c.start, c.end)?;
        let p = self.z[c.start as usize - 1..c.end as usize].iter().fold(creal(T::one()), |a, x| a * x);
        Ok(if c.inverted { creal(T::one()) / p } else { p })
    }

    /// `ber_k(z_{start,N})`.
    pub fn ber(&mut self, start: u32, k: u32) -> Result<Bounded<T>> {
        if let Some(v) = self.bers.get(&(start, k)) {
            return Ok(*v);
        }
        let x = self.cons(&ConsProd::new(start, self.z.len() as u32))?;
        let v = eval_ber(k, x);
        self.bers.insert((start, k), v);
        Ok(v)
    }

    pub fn li(&mut self, f: &LiFactor) -> Result<Bounded<T>> {
        if let Some(v) = self.lis.get(f) {
            return Ok(*v);
        }
        let x: Vec<Complex<T>> = f.args.iter().map(|a| self.cons(a)).collect::<Result<_>>()?;
        let mut tail = creal(T::one());
        let mut r: f64 = 0.0;
        for v in x.iter().rev() {
            tail *= v;
            r = r.max(cabs_f64(tail));
        }
        let v = if r <= SERIES_RADIUS {
            eval_li_series(&f.indices, &x, self.target)?
        } else {
            eval_li_hyperlog(&f.indices, &x, self.target)?
        };
        self.lis.insert(f.clone(), v);
        Ok(v)
    }

    pub fn generator(&mut self, g: &Generator) -> Result<Bounded<T>> {
        if g.ambient() as usize != self.z.len() {
            return Err(Error::Precondition(format!("generator over {} variables, point of {}", g.ambient(), self.z.len())));
        }
        let mut v = Bounded::one();
        for &(start, k) in g.bers() {
            v = v * self.ber(start, k)?;
        }
        for f in g.lis() {
            v = v * self.li(f)?;
        }
        Ok(v)
    }

    pub fn lincomb(&mut self, c: &LinComb) -> Result<Bounded<T>> {
        let mut out = Bounded::zero();
        for (g, q) in c.iter() {
            out = out + self.generator(g)?.scale(q);
        }
        Ok(out)
    }

    fn log_monomial(&mut self, m: &LogMonomial) -> Result<Bounded<T>> {
        let mut v = Bounded::exact(cpowu(two_pi_i(), m.two_pi_i));
        for &(start, e) in &m.logs {
            let x = self.cons(&ConsProd::new(start, self.z.len() as u32))?;
            v = v * Bounded::exact(cpowu(log_minus(x), e));
        }
        for f in &m.lis {
            v = v * self.li(f)?;
        }
        Ok(v)
    }

    pub fn log_expansion(&mut self, e: &LogExpansion) -> Result<Bounded<T>> {
        let mut out = Bounded::zero();
        for (m, q) in &e.terms {
            out = out + self.log_monomial(m)?.scale(q);
        }
        Ok(out)
    }

    /// `Li_n(z) - (-1)^{|n|-d} Li_n(1/z)` at the bound point, the first by
    /// its series and the second by its iterated integral.
    pub fn parity_combination(&mut self, n: &[u32]) -> Result<Bounded<T>> {
        if n.len() != self.z.len() {
            return Err(Error::Precondition(format!("index of depth {} at a point of {}", n.len(), self.z.len())));
        }
        let direct = eval_li_series(n, &self.z, self.target)?;
        let inverse = super::hyperlog::eval_li_inverse(n, &self.z, self.target)?;
        let w: u32 = n.iter().sum();
        Ok(if (w as usize - n.len()) % 2 == 0 { direct - inverse } else { direct + inverse })
    }
}

/// Evaluates [`CzvCombination`]s, caching `Li` values at roots of unity.
///
/// Depth-one values are summed as Hurwitz series; deeper ones use the
/// iterated-integral representation.
pub struct CzvEvaluator<T: Real> {
    target: f64,
    cache: HashMap<LiValue, Bounded<T>>,
}

impl<T: Real> CzvEvaluator<T> {
    pub fn new(target: f64) -> Self {
        CzvEvaluator { target, cache: HashMap::new() }
    }

    pub fn li(&mut self, v: &LiValue) -> Result<Bounded<T>> {
        if let Some(x) = self.cache.get(v) {
            return Ok(*x);
        }
        let x = if v.depth() == 1 {
            li_at_root_depth1(v.indices()[0], &v.roots()[0], self.target)?
        } else {
            eval_li_at_roots(v.indices(), v.roots(), self.target)?
        };
        self.cache.insert(v.clone(), x);
        Ok(x)
    }

    pub fn factor(&mut self, f: &CzvFactor) -> Result<Bounded<T>> {
        match f {
            CzvFactor::EvenZeta(k) => {
                Ok(Bounded::exact(cpowu(two_pi_i(), *k)).scale(&even_zeta_coefficient(*k)))
            }
            CzvFactor::Li(v) => self.li(v),
        }
    }

    pub fn symbol(&mut self, s: &CzvSymbol) -> Result<Bounded<T>> {
        let mut v = Bounded::exact(cpowu(two_pi_i(), s.two_pi_i()));
        for f in s.factors() {
            v = v * self.factor(f)?;
        }
        Ok(v)
    }

    pub fn combination(&mut self, c: &CzvCombination) -> Result<Bounded<T>> {
        let mut out = Bounded::zero();
        for (s, q) in c.iter() {
            if q.is_zero() {
                continue;
            }
            out = out + self.symbol(s)?.scale(q);
        }
        Ok(out)
    }
}
