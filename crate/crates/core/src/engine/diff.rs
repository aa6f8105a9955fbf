//! Differentiation and integration in the first variable.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::bernoulli::signed_binomial;
use crate::error::{Error, Result};
use crate::terms::{int, rat, ConsProd, Generator, LiFactor, LinComb};

/// `∂_{z_1} f = over_z1 / z_1 + Σ_j poles[j] · z_{2,j} / (1 - z_{1,j})`.
///
/// `poles[1]` is the coefficient of `1/(1 - z_1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffExpr {
    pub ambient: u32,
    pub over_z1: LinComb,
    pub poles: BTreeMap<u32, LinComb>,
}

impl DiffExpr {
    pub fn zero(ambient: u32) -> Self {
        DiffExpr { ambient, over_z1: LinComb::zero(ambient), poles: BTreeMap::new() }
    }

    pub fn new(over_z1: LinComb, pole_at_1: LinComb) -> Self {
        let ambient = over_z1.ambient();
        let mut e = DiffExpr { ambient, over_z1, poles: BTreeMap::new() };
        e.add_pole(1, &pole_at_1, &BigRational::one());
        e
    }

    pub fn pole_at_1(&self) -> LinComb {
        self.poles.get(&1).cloned().unwrap_or_else(|| LinComb::zero(self.ambient))
    }

    fn add_pole(&mut self, j: u32, c: &LinComb, q: &BigRational) {
        let e = self.poles.entry(j).or_insert_with(|| LinComb::zero(self.ambient));
        e.add_scaled(c, q);
        if e.is_zero() {
            self.poles.remove(&j);
        }
    }
}

/// Where `z_1` enters a generator.
enum Z1Li<'a> {
    None,
    /// Position in `lis()` of the factor whose first argument is `z_{1,j}`.
    Leading(usize, &'a LiFactor),
}

fn locate_z1(g: &Generator) -> Result<Z1Li<'_>> {
    let mut found = Z1Li::None;
    for (i, f) in g.lis().iter().enumerate() {
        for (pos, a) in f.args.iter().enumerate() {
            if a.start != 1 {
                continue;
            }
            if a.inverted || pos != 0 {
                return Err(Error::UnsupportedShape(format!("z_1 enters {g} through a non-leading or inverted argument")));
            }
            if matches!(found, Z1Li::Leading(..)) {
                return Err(Error::UnsupportedShape(format!("two Li factors of {g} depend on z_1")));
            }
            found = Z1Li::Leading(i, f);
        }
    }
    Ok(found)
}

fn bump_first(f: &LiFactor, by: i64) -> LiFactor {
    let mut idx = f.indices.clone();
    idx[0] = (idx[0] as i64 + by) as u32;
    LiFactor::new(idx, f.args.clone())
}

/// Symbolic `∂/∂z_1`.
pub fn diff_z1(c: &LinComb) -> Result<DiffExpr> {
    let n = c.ambient();
    let mut out = DiffExpr::zero(n);
    for (g, q) in c.iter() {
        let k = g.ber_at(1);
        if k > 0 {
            let h = g.without_ber(1).with_ber(1, k - 1)?;
            out.over_z1.add_term(h, q.clone());
        }
        if let Z1Li::Leading(pos, f) = locate_z1(g)? {
            let rest = g.without_li(pos);
            let j = f.args[0].end;
            if f.indices[0] > 1 {
                out.over_z1.add_term(rest.with_li(bump_first(f, -1)), q.clone());
            } else if f.depth() == 1 {
                out.add_pole(j, &LinComb::from_generator(rest), q);
            } else {
                // ∂ Li_{1,m'}(x, y) with x = z_{1,j}:
                //   [Li_{m'}(y) - Li_{m'}(x y_2, …)] · z_{2,j}/(1-x) - Li_{m'}(x y_2, …)/z_1
                let y2 = f.args[1];
                if y2.inverted || y2.start != j + 1 {
                    return Err(Error::UnsupportedShape(format!("non-adjacent arguments in {g}")));
                }
                let tail = LiFactor::new(f.indices[1..].to_vec(), f.args[1..].to_vec());
                let mut merged_args = vec![ConsProd::new(1, y2.end)];
                merged_args.extend_from_slice(&f.args[2..]);
                let merged = LiFactor::new(f.indices[1..].to_vec(), merged_args);
                let pole = LinComb::from_terms(
                    n,
                    [(rest.clone().with_li(tail), rat(1)), (rest.clone().with_li(merged.clone()), rat(-1))],
                );
                out.add_pole(j, &pole, q);
                out.over_z1.add_term(rest.with_li(merged), -q.clone());
            }
        }
    }
    Ok(out)
}

/// `∫ dz_1` of a differential form with poles only at `z_1 = 0` and `z_1 = 1`,
/// using the closed primitives of `ber_k/z_1`, `ber_k/(1-z_1)` and their
/// products with a Li factor led by `z_{1,j}`.
pub fn primitive_z1(e: &DiffExpr) -> Result<LinComb> {
    let n = e.ambient;
    if e.poles.keys().any(|&j| j != 1) {
        return Err(Error::UnsupportedShape("pole at 1 - z_{1,j} with j > 1 has no primitive here".into()));
    }
    let mut out = LinComb::zero(n);
    for (g, q) in e.over_z1.iter() {
        let k = g.ber_at(1);
        let base = g.without_ber(1);
        match locate_z1(g)? {
            Z1Li::None => out.add_term(base.with_ber(1, k + 1)?, q.clone()),
            Z1Li::Leading(pos, f) => {
                let rest = base.without_li(pos);
                for mu in 0..=k {
                    let s = if mu % 2 == 0 { q.clone() } else { -q.clone() };
                    let h = rest.clone().with_ber(1, k - mu)?.with_li(bump_first(f, 1 + mu as i64));
                    out.add_term(h, s);
                }
            }
        }
    }
    for (g, q) in e.pole_at_1().iter() {
        let k = g.ber_at(1);
        let base = g.without_ber(1);
        match locate_z1(g)? {
            Z1Li::None => {
                for mu in 0..=k {
                    let s = if mu % 2 == 0 { q.clone() } else { -q.clone() };
                    let h = base
                        .clone()
                        .with_ber(1, k - mu)?
                        .with_li(LiFactor::new(vec![1 + mu], vec![ConsProd::single(1)]));
                    out.add_term(h, s);
                }
            }
            Z1Li::Leading(pos, f) => {
                let j = f.args[0].end;
                if j == 1 {
                    return Err(Error::UnsupportedShape(format!("{g}/(1-z_1) has no primitive in the module")));
                }
                let rest = base.without_li(pos);
                let mut shifted_args = vec![ConsProd::new(2, j)];
                shifted_args.extend_from_slice(&f.args[1..]);
                let shifted = LiFactor::new(f.indices.clone(), shifted_args.clone());
                let mut deeper_idx = vec![0];
                deeper_idx.extend_from_slice(&f.indices);
                let mut deeper_args = vec![ConsProd::single(1)];
                deeper_args.extend_from_slice(&shifted_args);
                for mu in 0..=k {
                    let s = if mu % 2 == 0 { q.clone() } else { -q.clone() };
                    let r = rest.clone().with_ber(1, k - mu)?;
                    let l1 = LiFactor::new(vec![1 + mu], vec![ConsProd::single(1)]);
                    out.add_term(r.clone().with_li(l1).with_li(shifted.clone()), s.clone());
                    deeper_idx[0] = 1 + mu;
                    out.add_term(r.clone().with_li(LiFactor::new(deeper_idx.clone(), deeper_args.clone())), -s.clone());
                    out.add_term(r.with_li(bump_first(f, 1 + mu as i64)), -s);
                }
            }
        }
    }
    Ok(out)
}

/// `ber_k(z_{1,N}) Li_n(args) = (z_1 ∂_{z_1})^r Σ_μ C(-r, μ) ber_{k-μ}(z_{1,N}) Li_{n+(r+μ)e_1}(args)`;
/// returns the sum.
pub fn iterated_primitive(ambient: u32, k: u32, f: &LiFactor, r: u32) -> Result<LinComb> {
    if f.args.first().map(|a| a.start) != Some(1) || f.any_inverted() {
        return Err(Error::Precondition("iterated primitive needs a Li factor led by z_{1,j}".into()));
    }
    let mut out = LinComb::zero(ambient);
    for mu in 0..=k {
        let c = signed_binomial(-(r as i64), mu as i64);
        let g = Generator::one(ambient).with_ber(1, k - mu)?.with_li(bump_first(f, (r + mu) as i64));
        out.add_term(g, int(c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn li(n: u32, idx: Vec<u32>, args: Vec<ConsProd>) -> Generator {
        Generator::li(n, idx, args)
    }

    #[test]
    fn derivative_of_ber_and_li() {
        let g = Generator::ber(2, 1, 3);
        let d = diff_z1(&LinComb::from_generator(g)).unwrap();
        assert_eq!(d.over_z1, LinComb::from_generator(Generator::ber(2, 1, 2)));
        assert!(d.poles.is_empty());

        let l1 = li(2, vec![1], vec![ConsProd::new(1, 2)]);
        let d = diff_z1(&LinComb::from_generator(l1)).unwrap();
        assert!(d.over_z1.is_zero());
        assert_eq!(d.poles[&2], LinComb::from_generator(Generator::one(2)));

        // z_2-only terms are constants
        let c = LinComb::from_generator(li(2, vec![3], vec![ConsProd::single(2)]));
        let d = diff_z1(&c).unwrap();
        assert!(d.over_z1.is_zero() && d.poles.is_empty());
    }

    #[test]
    fn unsupported_shapes() {
        let inv = li(2, vec![2], vec![ConsProd::single(1).inv()]);
        assert!(diff_z1(&LinComb::from_generator(inv)).is_err());
        let second = li(2, vec![1, 2], vec![ConsProd::single(2), ConsProd::single(1)]);
        assert!(diff_z1(&LinComb::from_generator(second)).is_err());
        let e = DiffExpr::new(LinComb::zero(1), LinComb::from_generator(li(1, vec![1], vec![ConsProd::single(1)])));
        assert!(primitive_z1(&e).is_err());
    }

    #[test]
    fn primitive_round_trips() {
        // ber_2(z_{1,2}) Li_{2}(z_{1,2}) / z_1 and ber_1(z_{1,2}) Li_2(z_2)/(1 - z_1)
        let a = Generator::ber(2, 1, 2).with_li(LiFactor::new(vec![2], vec![ConsProd::new(1, 2)]));
        let b = Generator::ber(2, 1, 1).with_li(LiFactor::new(vec![2], vec![ConsProd::single(2)]));
        let e = DiffExpr::new(LinComb::from_generator(a.clone()), LinComb::from_generator(b));
        let p = primitive_z1(&e).unwrap();
        assert_eq!(diff_z1(&p).unwrap(), e);
    }

    #[test]
    fn primitive_of_pole_with_leading_li() {
        let g = Generator::ber(3, 1, 1).with_li(LiFactor::new(vec![2, 1], vec![ConsProd::new(1, 2), ConsProd::single(3)]));
        let e = DiffExpr::new(LinComb::zero(3), LinComb::from_generator(g));
        let p = primitive_z1(&e).unwrap();
        let d = diff_z1(&p).unwrap();
        assert_eq!(d, e);
    }

    #[test]
    fn iterated_matches_repeated_single() {
        let f = LiFactor::new(vec![1, 2], vec![ConsProd::single(1), ConsProd::single(2)]);
        for k in 0..4 {
            for r in 1..4 {
                let mut c = iterated_primitive(2, k, &f, r).unwrap();
                for _ in 0..r {
                    let d = diff_z1(&c).unwrap();
                    assert!(d.poles.is_empty());
                    c = d.over_z1;
                }
                let expect = Generator::one(2).with_ber(1, k).unwrap().with_li(f.clone());
                assert_eq!(c, LinComb::from_generator(expect));
            }
        }
    }
}
