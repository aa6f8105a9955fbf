//! Explicit equations in depth two and three.

use num_bigint::BigInt;

use super::{canonicalize, Form, PliResult, Source};
use crate::bernoulli::{binomial, signed_binomial};
use crate::error::{Error, Result};
use crate::terms::{int, rat, ConsProd, Generator, Index, LiFactor, LinComb, VarMap};

fn sign(e: u32) -> BigInt {
    if e % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

fn li(idx: Vec<u32>, args: Vec<ConsProd>) -> LiFactor {
    LiFactor::new(idx, args)
}

fn z(i: u32) -> ConsProd {
    ConsProd::single(i)
}

fn compact_depth2(n1: u32, n2: u32) -> LinComb {
    let w = n1 + n2;
    let mut c = LinComb::zero(2);
    for mu in n1..=w {
        let q = sign(n1 + mu) * binomial((mu - 1) as u64, (n1 - 1) as u64);
        let g = Generator::ber(2, 1, w - mu).with_li(li(vec![mu], vec![z(1)]));
        c.add_term(g, int(q));
    }
    c.add_term(Generator::li(2, vec![w], vec![ConsProd::new(1, 2)]), rat(-1));
    for mu in n2..=w {
        let q = sign(n2) * binomial((mu - 1) as u64, (n2 - 1) as u64);
        let g = Generator::ber(2, 1, w - mu).with_li(li(vec![mu], vec![z(2).inv()]));
        c.add_term(g, int(q));
    }
    c.add_term(Generator::ber(2, 2, n2).with_li(li(vec![n1], vec![z(1)])), rat(-1));
    c
}

fn finish(index: Index, form: Form, source: Source, compact: LinComb) -> Result<PliResult> {
    let equation = match form {
        Form::Compact => compact,
        Form::Canonical => canonicalize(&compact)?,
    };
    Ok(PliResult { index, form, source, equation })
}

/// Closed depth-two equation.
pub fn pli_depth2_closed(n1: u32, n2: u32, form: Form) -> Result<PliResult> {
    let index = Index::new(vec![n1, n2])?;
    finish(index, form, Source::ClosedDepth2, compact_depth2(n1, n2))
}

/// Closed depth-three equation, with the depth-two equation in `(z_2, z_3)`
/// substituted. The compact form keeps `Li(1/z)` factors and the
/// reversed-order factors `Li_{a,b}(z_2, z_1)`, `Li_{a,b}(z_2 z_3, z_1)`.
pub fn pli_depth3_closed(n1: u32, n2: u32, n3: u32, form: Form) -> Result<PliResult> {
    let index = Index::new(vec![n1, n2, n3])?;
    let mut c = compact_depth2(n2, n3)
        .embed(&VarMap::shift(2, 1))
        .mul_generator(&Generator::li(3, vec![n1], vec![z(1)]))
        .map_err(|e| Error::UnsupportedShape(e.to_string()))?;
    c.add_term(Generator::li(3, vec![n1 + n2, n3], vec![ConsProd::new(1, 2), z(3)]), rat(-1));
    c.add_term(Generator::ber(3, 3, n3).with_li(li(vec![n2, n1], vec![z(2), z(1)])), rat(1));
    c.add_term(Generator::li(3, vec![n2 + n3, n1], vec![ConsProd::new(2, 3), z(1)]), rat(1));
    let (a, b, cc) = (n1 as i64, n2 as i64, n3 as i64);
    for s in 0..=n2 {
        for mu in 0..=(n2 - s) {
            let nu = n2 - s - mu;
            let q = -signed_binomial(-cc, mu as i64) * signed_binomial(-a, nu as i64) * sign(n3 + mu);
            let g = Generator::ber(3, 1, s)
                .with_li(li(vec![n3 + mu], vec![z(3).inv()]))
                .with_li(li(vec![n1 + nu], vec![z(1)]));
            c.add_term(g, int(q));
        }
    }
    for s in 0..=n3 {
        for mu in 0..=(n3 - s) {
            let nu = n3 - s - mu;
            let q = -signed_binomial(-b, mu as i64) * signed_binomial(-a, nu as i64);
            let g = Generator::ber(3, 1, s).with_li(li(vec![n2 + mu, n1 + nu], vec![z(2), z(1)]));
            c.add_term(g, int(q));
        }
    }
    for s in 0..=n1 {
        for mu in 0..=(n1 - s) {
            let nu = n1 - s - mu;
            let q = -signed_binomial(-b, mu as i64) * signed_binomial(-cc, nu as i64) * sign(n2 + mu + n3 + nu);
            let g = Generator::ber(3, 1, s).with_li(li(vec![n2 + mu, n3 + nu], vec![z(2).inv(), z(3).inv()]));
            c.add_term(g, int(q));
        }
    }
    finish(index, form, Source::ClosedDepth3, c)
}
