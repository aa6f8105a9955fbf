use num_complex::Complex;

use super::*;
use crate::engine::{pli, pli_depth2_closed, Form};
use crate::root::RootOfUnity;
use crate::terms::{expand_ber_to_logs, invert_depth1, ConsProd, Index, LiFactor};
use crate::HpFloat;

fn cx(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn hp(re: f64, im: f64) -> Complex<HpFloat> {
    Complex::new(HpFloat::from_f64(re), HpFloat::from_f64(im))
}

fn ix(v: &[u32]) -> Index {
    Index::new(v.to_vec()).unwrap()
}

#[test]
fn li1_series_is_minus_log() {
    let v = eval_li_series(&[1], &[cx(-0.5, 0.0)], 1e-16).unwrap();
    assert!((v.re() + 1.5f64.ln()).abs() < 1e-15, "{v:?}");
    assert!(v.error < 1e-14);
}

#[test]
fn dilog_at_half() {
    let v = eval_li_series(&[2], &[cx(0.5, 0.0)], 1e-15).unwrap();
    let pi = std::f64::consts::PI;
    let expect = pi * pi / 12.0 - 2f64.ln().powi(2) / 2.0;
    assert!((v.re() - expect).abs() < 1e-13);
}

#[test]
fn stuffle_numerically() {
    let (a, b) = (cx(0.4, -0.3), cx(-0.5, 0.1));
    let t = 1e-15;
    let l1 = |x| eval_li_series(&[1], &[x], t).unwrap().to_c64();
    let v = l1(a) * l1(b)
        - eval_li_series(&[1, 1], &[a, b], t).unwrap().to_c64()
        - eval_li_series(&[1, 1], &[b, a], t).unwrap().to_c64()
        - eval_li_series(&[2], &[a * b], t).unwrap().to_c64();
    assert!(v.norm() < 1e-12, "{v}");
}

#[test]
fn hyperlog_matches_depth_one_inversion() {
    let z = cx(-0.6, 0.2);
    let direct = eval_li_inverse(&[3], &[z], 1e-14).unwrap();
    let inv = invert_depth1(3, ConsProd::single(1), 1).unwrap();
    let mut ev = Evaluator::new(vec![z], 1e-14);
    let via = ev.lincomb(&inv).unwrap();
    assert!((direct - via).abs() < 1e-11, "{direct:?} {via:?}");
    let one = eval_li_inverse(&[1], &[z], 1e-14).unwrap();
    let expect = -(Complex::new(1.0, 0.0) - Complex::new(1.0, 0.0) / z).ln();
    assert!((one.to_c64() - expect).norm() < 1e-12);
}

#[test]
fn depth_one_inversion_identity() {
    for seed in 0..10 {
        let p = sample_domain_point::<HpFloat>(1, seed).unwrap();
        let z = p.z[0];
        for n in 1..=6u32 {
            let a = eval_li_series(&[n], &[z], 1e-20).unwrap();
            let b = eval_li_hyperlog(&[n], &[Complex::new(HpFloat::from_i64(1), HpFloat::from_i64(0)) / z], 1e-20).unwrap();
            let s = if n % 2 == 0 { a + b } else { a - b };
            let r = s + eval_ber(n, z);
            assert!(r.abs() < 1e-12, "n={n}: {}", r.abs());
        }
    }
}

#[test]
fn cross_evaluator_agreement() {
    for n in Index::all_up_to_weight(4).into_iter().filter(|n| n.depth() <= 2) {
        let p = sample_domain_point::<f64>(n.depth(), 7).unwrap();
        let a = eval_li_series(n.entries(), &p.z, 1e-14).unwrap();
        let b = eval_li_hyperlog(n.entries(), &p.z, 1e-13).unwrap();
        assert!((a - b).abs() <= a.error + b.error + 1e-13, "{n}: {a:?} {b:?}");
    }
}

#[test]
fn quadrature_error_tracks_target() {
    let z = [hp(-0.7, 0.3), hp(0.2, -0.5)];
    let reference = eval_li_inverse(&[2, 3], &z, 1e-40).unwrap();
    let mut last = f64::INFINITY;
    for t in [1e-6, 1e-12, 1e-24] {
        let v = eval_li_inverse(&[2, 3], &z, t).unwrap();
        let actual = (v - reference).abs();
        assert!(actual <= v.error.max(1e-60) * 10.0 + 1e-38, "target {t}: actual {actual}, estimate {}", v.error);
        assert!(v.error <= t);
        assert!(actual <= last);
        last = actual;
    }
}

#[test]
fn zeta_values() {
    let z2 = zeta_value::<HpFloat>(2, 1e-40).unwrap();
    let pi = std::f64::consts::PI;
    assert!((z2.re() - pi * pi / 6.0).abs() < 1e-15);
    let z3 = zeta_value::<f64>(3, 1e-15).unwrap();
    assert!((z3.re() - 1.2020569031595942).abs() < 1e-15);
    // Catalan's constant as Im Li_2(i)
    let g = li_at_root_depth1::<f64>(2, &RootOfUnity::i(), 1e-15).unwrap();
    assert!((g.im() - 0.915_965_594_177_219).abs() < 1e-14);
    assert!((g.re() + pi * pi / 48.0).abs() < 1e-14);
}

#[test]
fn double_zeta_two_three() {
    // ζ(2,3) = Σ_{0<k1<k2} 1/(k1² k2³) = 3ζ(2)ζ(3) - 11/2 ζ(5)
    let v = eval_li_at_roots::<HpFloat>(&[2, 3], &[RootOfUnity::one(); 2], 1e-25).unwrap();
    let z = |s| zeta_value::<HpFloat>(s, 1e-30).unwrap().re();
    let expect = 3.0 * z(2) * z(3) - 5.5 * z(5);
    assert!((v.re() - expect).abs() < 1e-14, "{} {expect}", v.re());
    assert!(v.error < 1e-25);
    let probe = radial_limit(&[2, 3], &[RootOfUnity::one(); 2], (1e-3, 5e-4)).unwrap();
    assert!((probe.re - expect).abs() < 1e-3, "{probe}");
}

#[test]
fn ber_values_numerically() {
    let pi = std::f64::consts::PI;
    assert!(eval_ber(1, cx(-1.0, 0.0)).abs() < 1e-16);
    // upper half-plane limit at 1
    let b2 = eval_ber(2, cx(1.0, 1e-300));
    assert!((b2.re() + pi * pi / 3.0).abs() < 1e-14, "{b2:?}");
}

#[test]
fn generator_product_consistency() {
    let p = sample_domain_point::<f64>(2, 3).unwrap();
    let g = crate::terms::Generator::new(2, vec![(1, 1)], vec![LiFactor::new(vec![2], vec![ConsProd::single(2)])]).unwrap();
    let mut ev = Evaluator::new(p.z.clone(), 1e-15);
    let whole = ev.generator(&g).unwrap();
    let separate = eval_ber(1, p.z[0] * p.z[1]) * eval_li_series(&[2], &[p.z[1]], 1e-15).unwrap();
    assert!((whole - separate).abs() < 1e-12);
}

#[test]
fn samples_respect_the_domain() {
    for seed in 0..1000u64 {
        let d = 1 + (seed % 4) as usize;
        let p = sample_domain_point::<f64>(d, seed).unwrap();
        for i in 0..d {
            assert!(p.z[i].norm() >= 0.3 - 1e-12 && p.z[i].norm() <= 0.9 + 1e-12);
            let mut w = cx(1.0, 0.0);
            for x in &p.z[i..] {
                w *= x;
                assert!(ray_distance(w) >= RAY_MARGIN);
            }
        }
    }
    assert_eq!(sample_domain_point::<f64>(3, 42).unwrap(), sample_domain_point::<f64>(3, 42).unwrap());
}

#[test]
fn log_expansion_preserves_values() {
    let eq = pli(&ix(&[1, 2]), Form::Canonical).unwrap().equation;
    let e = expand_ber_to_logs(&eq);
    for seed in 0..10 {
        let p = sample_domain_point::<HpFloat>(2, seed).unwrap();
        let mut ev = Evaluator::new(p.z, 1e-30);
        let d = ev.lincomb(&eq).unwrap() - ev.log_expansion(&e).unwrap();
        assert!(d.abs() < 1e-40, "{}", d.abs());
    }
}

#[test]
fn verify_small_indices() {
    let r = verify_feq::<HpFloat>(&pli(&ix(&[1]), Form::Canonical).unwrap(), 3, 1e-14).unwrap();
    assert!(r.pass, "{r:?}");
    let r = verify_feq::<HpFloat>(&pli(&ix(&[1, 2]), Form::Canonical).unwrap(), 5, 1e-10).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(r.max_error < 1e-12);
    let c = verify_feq::<HpFloat>(&pli(&ix(&[1, 2]), Form::Compact).unwrap(), 2, 1e-10).unwrap();
    assert!(c.pass, "{c:?}");
}

#[test]
fn wrong_equation_fails() {
    let mut eq = pli(&ix(&[2, 1]), Form::Canonical).unwrap();
    eq.equation.add_term(crate::terms::Generator::ber(2, 1, 3), crate::BigRational::from_integer(1.into()));
    let r = verify_feq::<f64>(&eq, 2, 1e-10).unwrap();
    assert!(!r.pass);
}

#[test]
fn closed_form_numerically() {
    let a = pli(&ix(&[2, 3]), Form::Compact).unwrap().equation;
    let b = pli_depth2_closed(2, 3, Form::Compact).unwrap().equation;
    assert!(compare_lincombs::<f64>(&a, &b, 2, 5, 1e-14).unwrap() < 1e-10);
}
