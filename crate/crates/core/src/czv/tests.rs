use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::bernoulli::{bernoulli_half, bernoulli_number};
use crate::engine::{pli, Form};
use crate::terms::Index;

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn root(a: i64, n: u32) -> RootOfUnity {
    RootOfUnity::new(a, n).unwrap()
}

fn li(idx: &[u32], roots: &[RootOfUnity]) -> CzvCombination {
    CzvCombination::li(LiValue::new(idx.to_vec(), roots.to_vec()).unwrap())
}

fn z(idx: &[u32]) -> CzvCombination {
    CzvCombination::zeta(idx).unwrap()
}

fn sum(parts: &[(BigRational, CzvCombination)]) -> CzvCombination {
    let mut out = CzvCombination::zero();
    for (c, x) in parts {
        out.add_scaled(x, c);
    }
    out
}

fn at(n: &[u32], roots: &[RootOfUnity]) -> CzvCombination {
    let eq = pli(&Index::new(n.to_vec()).unwrap(), Form::Canonical).unwrap();
    specialize(&eq, roots).unwrap()
}

#[test]
fn ber_values() {
    let one = RootOfUnity::one();
    // ber_2(1) = -π²/3 = (1/3)(iπ)²
    assert_eq!(ber_at_root(2, &one), r(1, 3));
    assert_eq!(ber_at_root(1, &RootOfUnity::i()), r(-1, 2));
    assert_eq!(ber_at_root(1, &one), r(-1, 1));
    assert_eq!(ber_at_root_branch(1, &one, Branch::Lower), r(1, 2));
    for s in 1..=10 {
        let k = 2 * s;
        let b1 = ber_at_root(k, &one);
        let factor = r(1, 1 << (k - 1)) - BigRational::one();
        assert_eq!(ber_at_root(k, &RootOfUnity::minus_one()), b1.clone() * factor);
        // ber_{2s}(1) = -2 ζ(2s)
        assert_eq!(ber_at_root_branch(k, &one, Branch::Upper), -even_zeta_coefficient(k) * r(2, 1));
        assert_eq!(ber_at_root_branch(k, &one, Branch::Lower), ber_at_root_branch(k, &one, Branch::Upper));
    }
    for k in 2..8 {
        assert_eq!(ber_at_root(k, &one) * BigRational::zero(), BigRational::zero());
        if k % 2 == 1 {
            assert!(ber_at_root(k, &one).is_zero());
        }
    }
}

#[test]
fn even_zeta_values() {
    // ζ(2) = π²/6 = -(2πi)²/24
    assert_eq!(even_zeta_coefficient(2), r(-1, 24));
    assert_eq!(even_zeta_coefficient(0), r(-1, 2));
    assert_eq!(even_zeta_coefficient(4), r(1, 1440));
}

#[test]
fn regularized_limits() {
    let m1 = RootOfUnity::minus_one();
    let one = RootOfUnity::one();
    let x0 = regularized_limit_factor(&[2, 1], &[m1, one]).unwrap();
    let expect = sum(&[(r(-1, 1), li(&[1, 2], &[m1, m1])), (r(-1, 1), li(&[1, 2], &[m1, one]))]);
    assert_eq!(x0, expect);
    assert_eq!(regularized_limit_factor(&[2], &[one]).unwrap(), z(&[2]));
    assert!(regularized_limit_factor(&[1], &[one]).unwrap().is_zero());
    assert!(regularized_limit_factor(&[1, 1], &[one, one]).unwrap().is_zero());
    assert_eq!(regularized_limit_factor(&[1], &[m1]).unwrap(), li(&[1], &[m1]));
}

#[test]
fn one_two_at_one() {
    assert_eq!(at(&[1, 2], &[RootOfUnity::one(), RootOfUnity::one()]).normalized(), z(&[3]).scaled(&r(2, 1)));
}

#[test]
fn one_two_at_minus_one() {
    let v = at(&[1, 2], &[RootOfUnity::one(), RootOfUnity::minus_one()]);
    assert_eq!(v.normalized(), z(&[3]).scaled(&r(1, 4)));
}

#[test]
fn one_two_at_i() {
    let i = RootOfUnity::i();
    let v = at(&[1, 2], &[RootOfUnity::one(), i]);
    // ζ(3) + Li_3(i) - iπ³/48 + iπ Li_2(i)/2
    let expect = sum(&[
        (r(1, 1), z(&[3])),
        (r(1, 1), li(&[3], &[i])),
        (r(1, 384), CzvCombination::two_pi_i_power(3)),
        (r(1, 4), CzvCombination::two_pi_i_power(1).mul(&li(&[2], &[i]))),
    ]);
    assert_eq!(v.normalized(), expect);
}

#[test]
fn divergent_head_is_rejected() {
    let eq = pli(&Index::new(vec![1, 1]).unwrap(), Form::Canonical).unwrap();
    let one = RootOfUnity::one();
    assert!(matches!(specialize(&eq, &[one, one]), Err(Error::Divergent(_))));
}

#[test]
fn specialization_structure() {
    let mut seed = 7u64;
    let mut next = |n: u32| {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((seed >> 33) % n as u64) as i64
    };
    for n in Index::all_up_to_weight(5) {
        let d = n.depth();
        let eq = pli(&n, Form::Canonical).unwrap();
        for order in [1u32, 2, 3, 4, 6] {
            for _ in 0..2 {
                let roots: Vec<RootOfUnity> = (0..d).map(|_| root(next(order), order)).collect();
                if n.entries()[d - 1] == 1 && roots[d - 1].is_one() {
                    continue;
                }
                let v = specialize(&eq, &roots).unwrap();
                if v.is_zero() {
                    continue;
                }
                assert_eq!(v.weight(), Some(n.weight()), "{n} at {roots:?}");
                assert!(v.max_depth() < d, "{n} at {roots:?}: {v}");
            }
        }
    }
}

#[test]
fn mzv_depth2() {
    assert_eq!(reduce_mzv_depth2(1, 2).unwrap().fold_zeta_zero(), z(&[3]));
    let e = sum(&[(r(3, 1), z(&[2]).mul(&z(&[3]))), (r(-11, 2), z(&[5]))]);
    assert_eq!(reduce_mzv_depth2(2, 3).unwrap().fold_zeta_zero(), e);
    assert!(reduce_mzv_depth2(2, 2).is_err());
    assert!(reduce_mzv_depth2(2, 1).is_err());
    for w in (3..=15).step_by(2) {
        for n1 in 1..=w - 2 {
            assert!(integrality_check(&reduce_mzv_depth2(n1, w - n1).unwrap()));
        }
    }
}

#[test]
fn even_weight_relation_vanishes() {
    for w in (2..=14).step_by(2) {
        for n1 in 1..w - 1 {
            let rel = mzv_depth2_even_relation(n1, w - n1).unwrap();
            assert!(rel.normalized().is_zero(), "({n1},{}): {}", w - n1, rel.normalized());
        }
    }
}

#[test]
fn mzv_one_five_two() {
    let v = reduce_mzv_depth3(1, 5, 2).unwrap();
    assert!(integrality_check(&v));
    let mut halved = v.clone();
    let (s, c) = v.iter().find(|(_, c)| !(*c / r(2, 1)).is_integer()).map(|(s, c)| (s.clone(), c.clone())).unwrap();
    halved.add_term(s, -c / r(2, 1));
    assert!(!integrality_check(&halved));
    let expect = sum(&[
        (r(7, 1), z(&[8])),
        (r(3, 1), z(&[2]).mul(&z(&[6]))),
        (r(-5, 1), z(&[4]).mul(&z(&[2])).mul(&z(&[2]))),
        (r(2, 1), z(&[2]).mul(&z(&[3])).mul(&z(&[3]))),
        (r(-3, 1), z(&[3]).mul(&z(&[5]))),
        (r(7, 1), z(&[1, 7])),
        (r(3, 2), z(&[4]).mul(&z(&[4]))),
        (r(1, 2), z(&[5, 3])),
        (r(-1, 2), z(&[6, 2])),
    ]);
    assert_eq!(v.fold_zeta_zero(), expect);
    assert!(reduce_mzv_depth3(1, 2, 2).is_err());
    assert!(mzv_depth2_even_relation(1, 1).is_err());
    assert!(reduce_mzv_depth3(2, 3, 1).is_err());
}

#[test]
fn alternating_depth2() {
    assert_eq!(alt_depth2(1, 2, 1, 1).unwrap().fold_zeta_zero().normalized(), z(&[3]).normalized());
    assert_eq!(alt_depth2(1, 2, 1, -1).unwrap().normalized(), z(&[3]).scaled(&r(1, 8)));
    for (n1, n2) in [(2, 3), (3, 2), (1, 4)] {
        assert_eq!(
            alt_depth2(n1, n2, 1, 1).unwrap().normalized(),
            reduce_mzv_depth2(n1, n2).unwrap().normalized()
        );
    }
    assert!(alt_depth2(2, 1, 1, 1).is_err());
    assert!(alt_depth2(2, 2, 1, -1).is_err());
    assert!(alt_depth2(2, 1, -1, 1).is_err());
    assert!(alt_depth2(2, 1, 1, -1).is_ok());
}

#[test]
fn bernoulli_half_values() {
    for s in 1..=20 {
        let k = 2 * s;
        let expect = (r(2, 1) / BigRational::from_integer(num_bigint::BigInt::from(2).pow(k)) - BigRational::one())
            * bernoulli_number(k).unwrap();
        assert_eq!(bernoulli_half(k).unwrap(), expect);
    }
}

#[test]
fn bivariate_bernoulli_identity() {
    assert!(bernoulli_identity_check(0, 0));
    assert!(bernoulli_identity_check(1, 2));
    for w in 0..=8 {
        for n1 in 0..=w {
            assert!(bernoulli_identity_check(n1, w - n1), "({n1},{})", w - n1);
        }
    }
}

#[test]
fn engine_outputs_are_integral() {
    for n in Index::all_up_to_weight(6) {
        assert!(integrality_check(&pli(&n, Form::Canonical).unwrap()));
    }
}

#[test]
fn ber_as_li_parts() {
    let i = RootOfUnity::i();
    let c = ber_at_root_as_li(3, &i).unwrap();
    assert_eq!(c, sum(&[(r(-1, 1), li(&[3], &[i])), (r(1, 1), li(&[3], &[i.inv()]))]));
    assert!(ber_at_root_as_li(1, &RootOfUnity::one()).is_err());
}

#[test]
fn fourth_root_sides_have_expected_shape() {
    for n in [3, 5] {
        let l = fourth_root_lhs(n).unwrap();
        let rhs = fourth_root_rhs(n).unwrap();
        assert_eq!(l.weight(), Some(n + 1));
        assert_eq!(rhs.weight(), Some(n + 1));
        assert!(l.max_depth() <= 1);
    }
    assert!(fourth_root_rhs(2).is_err());
}

#[test]
fn rendering_and_json() {
    let v = reduce_mzv_depth3(1, 5, 2).unwrap().fold_zeta_zero();
    let t = v.render(Format::Text);
    assert!(t.contains("7 ζ(1,7)"), "{t}");
    assert!(t.contains("ζ(2)^2"), "{t}");
    let l = at(&[1, 2], &[RootOfUnity::one(), RootOfUnity::i()]);
    assert!(l.render(Format::Text).contains("1/4"));
    assert!(l.render(Format::Latex).contains("\\mathrm{Li}"));
    let j = serde_json::to_string(&l).unwrap();
    let back: CzvCombination = serde_json::from_str(&j).unwrap();
    assert_eq!(back, l);
}
