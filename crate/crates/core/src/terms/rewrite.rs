use num_rational::BigRational;
use num_traits::One;

use super::{rat, ConsProd, Generator, LiFactor, LinComb};
use crate::error::{Error, Result};

/// `Li_n(1/x) = -(-1)^n (Li_n(x) + ber_n(x))` for a consecutive product `x`
/// ending at the last ambient variable.
pub fn invert_depth1(n: u32, x: ConsProd, ambient: u32) -> Result<LinComb> {
    if x.inverted || x.end != ambient {
        return Err(Error::UnsupportedShape(format!(
            "depth-1 inversion needs an argument ending at z_{ambient}"
        )));
    }
    let s = if n % 2 == 0 { rat(-1) } else { rat(1) };
    Ok(LinComb::from_terms(
        ambient,
        [
            (Generator::li(ambient, vec![n], vec![x]), s.clone()),
            (Generator::ber(ambient, x.start, n), s),
        ],
    ))
}

/// `Li_{a,b}(p, q) = Li_a(p) Li_b(q) - Li_{b,a}(q, p) - Li_{a+b}(qp)`
/// where `q` sits immediately left of `p` in the chain.
pub fn stuffle_swap_depth2(ambient: u32, f: &LiFactor) -> Result<LinComb> {
    let (a, b) = match f.indices[..] {
        [a, b] => (a, b),
        _ => return Err(Error::UnsupportedShape("stuffle swap needs a depth-2 factor".into())),
    };
    let (p, q) = (f.args[0], f.args[1]);
    if p.inverted || q.inverted || q.end + 1 != p.start {
        return Err(Error::UnsupportedShape(format!("cannot swap Li arguments {p:?}, {q:?}")));
    }
    let qp = ConsProd::new(q.start, p.end);
    let prod = Generator::one(ambient)
        .with_li(LiFactor::new(vec![a], vec![p]))
        .with_li(LiFactor::new(vec![b], vec![q]));
    Ok(LinComb::from_terms(
        ambient,
        [
            (prod, BigRational::one()),
            (Generator::li(ambient, vec![b, a], vec![q, p]), rat(-1)),
            (Generator::li(ambient, vec![a + b], vec![qp]), rat(-1)),
        ],
    ))
}

/// Rewrites every depth-2 factor whose arguments run right-to-left.
pub fn canonical_order(g: &Generator) -> Result<LinComb> {
    let pos = g
        .lis()
        .iter()
        .position(|f| f.depth() == 2 && !f.any_inverted() && f.args[0].start > f.args[1].end);
    match pos {
        None => Ok(LinComb::from_generator(g.clone())),
        Some(i) => {
            let rest = g.without_li(i);
            let swapped = stuffle_swap_depth2(g.ambient(), &g.lis()[i])?.mul_generator(&rest)?;
            let mut out = LinComb::zero(g.ambient());
            for (h, q) in swapped.iter() {
                out.add_scaled(&canonical_order(h)?, q);
            }
            Ok(out)
        }
    }
}
