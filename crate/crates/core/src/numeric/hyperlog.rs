//! Iterated integrals `∫_0^1 ω_{a_1} ⋯ ω_{a_w}`, `ω_a = dt/(t - a)`, by the
//! nested-function scheme `F_k(t) = ∫_0^t F_{k-1}(s) ds/(s - a_{w-k+1})` on
//! piecewise Gauss-Legendre panels.

use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;

use super::real::{cabs_f64, creal, root_value, Real};
use super::series::is_real_one;
use super::Bounded;
use crate::error::{Error, Result};
use crate::root::RootOfUnity;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum HLetter<T> {
    Zero,
    One,
    At(Complex<T>),
}

impl<T: Real> HLetter<T> {
    pub fn from_value(x: Complex<T>) -> Self {
        if is_real_one(&x) {
            HLetter::One
        } else if x.re.is_zero() && x.im.is_zero() {
            HLetter::Zero
        } else {
            HLetter::At(x)
        }
    }

    fn approx(&self) -> Option<(f64, f64)> {
        match self {
            HLetter::Zero => None,
            HLetter::One => Some((1.0, 0.0)),
            HLetter::At(x) => Some((x.re.to_f64(), x.im.to_f64())),
        }
    }
}

/// Gauss-Legendre rule on `[-1, 1]` with the matrix `S_{jl} = ∫_{-1}^{x_j} ℓ_l`.
struct Rule<T> {
    x: Vec<T>,
    w: Vec<T>,
    s: Vec<Vec<T>>,
}

fn legendre<T: Real>(m: usize, x: T) -> (T, T) {
    // (P_m(x), P_{m-1}(x))
    let (mut p0, mut p1) = (T::one(), x);
    for k in 1..m {
        let kt = T::from_i64(k as i64);
        let p2 = ((kt + kt + T::one()) * x * p1 - kt * p0) / (kt + T::one());
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

fn build_rule<T: Real>(m: usize) -> Rule<T> {
    let mut x = Vec::with_capacity(m);
    let mut w = Vec::with_capacity(m);
    let mt = T::from_i64(m as i64);
    for i in 0..m {
        let mut g = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, q) = legendre(m, g);
            let dp = m as f64 * (g * p - q) / (g * g - 1.0);
            let step = p / dp;
            g -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let mut t = T::from_f64(g);
        let mut dp = T::one();
        for _ in 0..(T::DIGITS / 14 + 2) {
            let (p, q) = legendre(m, t);
            dp = mt * (t * p - q) / (t * t - T::one());
            t -= p / dp;
        }
        let (p, q) = legendre(m, t);
        dp = if p.is_zero() { dp } else { mt * (t * p - q) / (t * t - T::one()) };
        x.push(t);
        w.push(T::from_i64(2) / ((T::one() - t * t) * dp * dp));
    }
    // P_k at the nodes, k = 0..=m
    let p: Vec<Vec<T>> = x
        .iter()
        .map(|&t| {
            let mut v = vec![T::one(), t];
            for k in 1..m {
                let kt = T::from_i64(k as i64);
                let next = ((kt + kt + T::one()) * t * v[k] - kt * v[k - 1]) / (kt + T::one());
                v.push(next);
            }
            v
        })
        .collect();
    let half = T::one() / T::from_i64(2);
    let s = (0..m)
        .map(|j| {
            (0..m)
                .map(|l| {
                    let mut acc = (x[j] + T::one()) * half;
                    for k in 1..m {
                        acc += half * p[l][k] * (p[j][k + 1] - p[j][k - 1]);
                    }
                    w[l] * acc
                })
                .collect()
        })
        .collect();
    Rule { x, w, s }
}

fn rule<T: Real>(m: usize) -> Arc<Rule<T>> {
    type Cache = Mutex<HashMap<(TypeId, usize), Arc<dyn Any + Send + Sync>>>;
    static RULES: OnceLock<Cache> = OnceLock::new();
    let key = (TypeId::of::<T>(), m);
    if let Some(r) = RULES.get_or_init(Default::default).lock().unwrap().get(&key) {
        return r.clone().downcast::<Rule<T>>().expect("rule type");
    }
    let r = Arc::new(build_rule::<T>(m));
    RULES.get().unwrap().lock().unwrap().insert(key, r.clone());
    r
}

/// `[a, a + h]` with `ua = 1 - a` stored exactly.
#[derive(Clone, Copy, Debug)]
struct Panel<T> {
    a: T,
    ua: T,
    h: T,
}

fn split_panels<T: Real>(letters: &[(f64, f64)], h_min: f64) -> Vec<Panel<T>> {
    let mut out = Vec::new();
    let mut stack = vec![Panel { a: T::zero(), ua: T::one(), h: T::one() }];
    while let Some(p) = stack.pop() {
        let (a, h) = (p.a.to_f64(), p.h.to_f64());
        let ub = (p.ua - p.h).to_f64();
        let b = a + h;
        let dist = letters
            .iter()
            .map(|&(re, im)| {
                if re == 1.0 && im == 0.0 {
                    ub
                } else if re < a {
                    (re - a).hypot(im)
                } else if re > b {
                    (re - b).hypot(im)
                } else {
                    im.abs()
                }
            })
            .fold(f64::INFINITY, f64::min);
        if h > dist && h > h_min {
            let half = p.h / T::from_i64(2);
            // right half first so panels pop in increasing order
            stack.push(Panel { a: p.a + half, ua: p.ua - half, h: half });
            stack.push(Panel { a: p.a, ua: p.ua, h: half });
        } else {
            out.push(p);
        }
    }
    out
}

fn integrate<T: Real>(word: &[HLetter<T>], panels: &[Panel<T>], m: usize) -> Complex<T> {
    let r = rule::<T>(m);
    let w = word.len();
    let zero = creal(T::zero());
    let half = T::one() / T::from_i64(2);
    let letters: Vec<HLetter<T>> = word.iter().rev().copied().collect();
    let mut start = vec![zero; w + 1];
    start[0] = creal(T::one());
    let mut prev = vec![creal(T::one()); m];
    let mut cur = vec![zero; m];
    let mut g = vec![zero; m];
    for p in panels {
        let hh = p.h * half;
        let t: Vec<T> = r.x.iter().map(|&x| p.a + hh * (x + T::one())).collect();
        let u: Vec<T> = r.x.iter().map(|&x| p.ua - hh * (x + T::one())).collect();
        prev.iter_mut().for_each(|v| *v = creal(T::one()));
        for (k, letter) in letters.iter().enumerate() {
            for l in 0..m {
                g[l] = match letter {
                    HLetter::Zero => prev[l] / t[l],
                    HLetter::One => -prev[l] / u[l],
                    HLetter::At(s) => prev[l] / (creal(t[l]) - *s),
                };
            }
            let mut end = zero;
            for l in 0..m {
                end += g[l] * r.w[l];
            }
            for j in 0..m {
                let mut acc = zero;
                let row = &r.s[j];
                for l in 0..m {
                    acc += g[l] * row[l];
                }
                cur[j] = start[k + 1] + acc * hh;
            }
            start[k + 1] += end * hh;
            std::mem::swap(&mut prev, &mut cur);
        }
    }
    start[w]
}

fn nodes_for(target: f64) -> usize {
    ((1.7 * (-target.log10()).max(1.0)).ceil() as usize + 4).clamp(8, 120)
}

/// Value of the iterated integral over `[0, 1]` of the word read left to
/// right, leftmost form outermost.
///
/// Letters must avoid `(0, 1)`; the letter `1` is allowed except in the
/// leftmost position, and the letter `0` except in the rightmost one.
pub fn eval_word<T: Real>(word: &[HLetter<T>], target: f64) -> Result<Bounded<T>> {
    let Some(last) = word.last() else {
        return Ok(Bounded::exact(creal(T::one())));
    };
    if *last == HLetter::Zero {
        return Err(Error::Divergent("word ending in ω_0".into()));
    }
    if word[0] == HLetter::One {
        return Err(Error::Divergent("word starting with ω_1".into()));
    }
    let approx: Vec<(f64, f64)> = word.iter().filter_map(HLetter::approx).collect();
    for &(re, im) in &approx {
        if im.abs() <= 1e-300 && re > 0.0 && re < 1.0 {
            return Err(Error::Domain(format!("letter {re} on the integration segment")));
        }
    }
    let w = word.len() as i32;
    let has_one = word.contains(&HLetter::One);
    let floor = (64.0 * T::epsilon()).sqrt().max(f64::MIN_POSITIVE);
    let mut h_min = 0.0;
    let mut cut_error = 0.0;
    if has_one {
        // panels reach down to h with h (1 + |log h|)^w below the target
        h_min = 0.5;
        let cut = |h: f64| h * (1.0 - h.ln()).powi(w);
        while cut(h_min) > target * 1e-2 && h_min > T::epsilon() * 64.0 {
            h_min /= 2.0;
        }
        cut_error = cut(h_min);
    }
    let panels = split_panels::<T>(&approx, h_min.max(floor * floor));
    let mut m1 = nodes_for(target);
    let mut v1 = integrate(word, &panels, m1);
    for _ in 0..4 {
        let m2 = m1 + (m1 / 3).max(4);
        let v2 = integrate(word, &panels, m2);
        let diff = cabs_f64(v2 - v1);
        let scale = 1.0 + cabs_f64(v2);
        let rounding = T::epsilon() * 16.0 * ((panels.len() * m2) as f64).sqrt() * w as f64 * scale;
        let error = diff + rounding + cut_error;
        // below the rounding floor further nodes cannot help
        if error <= target || diff <= rounding || m2 >= 160 {
            return Ok(Bounded { value: v2, error });
        }
        m1 = m2;
        v1 = v2;
    }
    Err(Error::Precision(format!("iterated integral of weight {w} to {target:e}")))
}

/// `Li_n` through the word `ω_0^{n_d-1} ω_{σ_d} ⋯ ω_0^{n_1-1} ω_{σ_1}` with
/// `σ_i = 1/(y_i ⋯ y_d)`, given the letters `σ_i` directly.
pub fn eval_li_letters<T: Real>(n: &[u32], sigma: &[HLetter<T>], target: f64) -> Result<Bounded<T>> {
    if n.is_empty() || n.len() != sigma.len() || n.contains(&0) {
        return Err(Error::InvalidIndex(format!("Li_{n:?} with {} letters", sigma.len())));
    }
    let mut word = Vec::new();
    for i in (0..n.len()).rev() {
        word.extend(std::iter::repeat(HLetter::Zero).take(n[i] as usize - 1));
        word.push(sigma[i]);
    }
    let v = eval_word(&word, target)?;
    Ok(if n.len() % 2 == 1 { -v } else { v })
}

/// `Li_n(y)` by its iterated-integral representation, for arguments whose
/// tail products `y_i ⋯ y_d` avoid `[1, ∞)`.
pub fn eval_li_hyperlog<T: Real>(n: &[u32], y: &[Complex<T>], target: f64) -> Result<Bounded<T>> {
    if n.len() != y.len() {
        return Err(Error::InvalidIndex(format!("Li_{n:?} with {} arguments", y.len())));
    }
    let mut tail = creal(T::one());
    let mut sigma = vec![HLetter::Zero; y.len()];
    for i in (0..y.len()).rev() {
        tail *= y[i];
        if tail.re.is_zero() && tail.im.is_zero() {
            return Err(Error::Domain("vanishing tail product".into()));
        }
        sigma[i] = HLetter::from_value(creal(T::one()) / tail);
        if is_real_one(&tail) {
            sigma[i] = HLetter::One;
        }
    }
    eval_li_letters(n, &sigma, target)
}

/// `Li_n(1/z)`, with letters `z_i ⋯ z_d` formed without division.
pub fn eval_li_inverse<T: Real>(n: &[u32], z: &[Complex<T>], target: f64) -> Result<Bounded<T>> {
    if n.len() != z.len() {
        return Err(Error::InvalidIndex(format!("Li_{n:?} with {} arguments", z.len())));
    }
    let mut tail = creal(T::one());
    let mut sigma = vec![HLetter::Zero; z.len()];
    for i in (0..z.len()).rev() {
        tail *= z[i];
        sigma[i] = HLetter::from_value(tail);
    }
    eval_li_letters(n, &sigma, target)
}

/// `Li_n(ρ)` at roots of unity with `(n_d, ρ_d) ≠ (1, 1)`.
pub fn eval_li_at_roots<T: Real>(n: &[u32], roots: &[RootOfUnity], target: f64) -> Result<Bounded<T>> {
    if n.len() != roots.len() {
        return Err(Error::InvalidIndex(format!("Li_{n:?} with {} arguments", roots.len())));
    }
    let mut tail = RootOfUnity::one();
    let mut sigma = vec![HLetter::Zero; n.len()];
    for i in (0..n.len()).rev() {
        tail = tail.mul(&roots[i]);
        sigma[i] = if tail.is_one() { HLetter::One } else { HLetter::At(root_value(&tail.inv())) };
    }
    eval_li_letters(n, &sigma, target)
}
