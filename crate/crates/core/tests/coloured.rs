use num_complex::Complex;
use plfeq::czv::{
    fourth_root_lhs, fourth_root_rhs, reduce_mzv_depth2, reduce_mzv_depth3, specialize, specialize_lincomb, Branch,
    CzvCombination,
};
use plfeq::engine::{pli, Form};
use plfeq::numeric::{eval_li_at_roots, li_at_root_depth1, zeta_value, CzvEvaluator};
use plfeq::root::RootOfUnity;
use plfeq::terms::Index;
use plfeq::HpFloat;

const TARGET: f64 = 1e-25;

fn ix(v: &[u32]) -> Index {
    Index::new(v.to_vec()).unwrap()
}

fn value(c: &CzvCombination) -> Complex<f64> {
    CzvEvaluator::<HpFloat>::new(TARGET).combination(c).unwrap().to_c64()
}

fn mpl(n: &[u32], roots: &[RootOfUnity]) -> Complex<f64> {
    eval_li_at_roots::<HpFloat>(n, roots, TARGET).unwrap().to_c64()
}

#[test]
fn one_two_corollaries() {
    let (one, m1, i) = (RootOfUnity::one(), RootOfUnity::minus_one(), RootOfUnity::i());
    let z3 = zeta_value::<HpFloat>(3, TARGET).unwrap().re();
    assert!((mpl(&[1, 2], &[one, one]).re - z3).abs() < 1e-10);
    assert!((2.0 * mpl(&[1, 2], &[one, m1]).re - z3 / 4.0).abs() < 1e-10);
    let im_li2 = li_at_root_depth1::<HpFloat>(2, &i, TARGET).unwrap().im();
    let lhs = 2.0 * mpl(&[1, 2], &[one, i]).re;
    assert!((lhs - (29.0 / 32.0 * z3 - std::f64::consts::FRAC_PI_2 * im_li2)).abs() < 1e-10);
    // the specialisations agree with the same values
    let eq = pli(&ix(&[1, 2]), Form::Canonical).unwrap();
    assert!((value(&specialize(&eq, &[one, i]).unwrap()).re - lhs).abs() < 1e-10);
    assert!((value(&specialize(&eq, &[one, one]).unwrap()).re - 2.0 * z3).abs() < 1e-10);
}

#[test]
fn specialisations_match_direct_values() {
    // PLi_n(ρ) = Li_n(ρ) - (-1)^{|n|-d} Li_n(1/ρ)
    let roots = |v: &[(u32, u32)]| v.iter().map(|&(a, n)| RootOfUnity::new(a as i64, n).unwrap()).collect::<Vec<_>>();
    for (n, r) in [
        (vec![2, 1], roots(&[(1, 4), (1, 2)])),
        (vec![1, 2], roots(&[(1, 3), (2, 3)])),
        (vec![2, 2], roots(&[(0, 1), (1, 6)])),
        (vec![1, 1, 2], roots(&[(1, 4), (0, 1), (1, 2)])),
        (vec![2, 1, 2], roots(&[(0, 1), (0, 1), (0, 1)])),
        (vec![1, 3], roots(&[(1, 2), (1, 2)])),
    ] {
        let eq = pli(&Index::new(n.clone()).unwrap(), Form::Canonical).unwrap();
        let s = value(&specialize(&eq, &r).unwrap());
        let inv: Vec<RootOfUnity> = r.iter().map(RootOfUnity::inv).collect();
        let sign = if (n.iter().sum::<u32>() as usize - n.len()) % 2 == 0 { -1.0 } else { 1.0 };
        let direct = mpl(&n, &r) + mpl(&n, &inv) * sign;
        assert!((s - direct).norm() < 1e-12, "{n:?} at {r:?}: {s} vs {direct}");
    }
}

#[test]
fn branch_choice_does_not_change_values() {
    let i = RootOfUnity::i();
    for n in [vec![1, 2], vec![2, 1], vec![3, 1], vec![1, 1, 2]] {
        let eq = pli(&Index::new(n.clone()).unwrap(), Form::Canonical).unwrap();
        let d = n.len();
        let mut r = vec![i; d];
        r[d - 2] = i.inv();
        let up = value(&specialize_lincomb(&eq.equation, &r, Branch::Upper).unwrap());
        let down = value(&specialize_lincomb(&eq.equation, &r, Branch::Lower).unwrap());
        assert!((up - down).norm() < 1e-12, "{n:?}: {up} vs {down}");
    }
}

#[test]
fn fourth_root_identity() {
    let (i, mi) = (RootOfUnity::i(), RootOfUnity::i().inv());
    for n in [3u32, 5] {
        let rhs = value(&fourth_root_rhs(n).unwrap());
        let spec = value(&fourth_root_lhs(n).unwrap());
        // PLi_{n,1}(i, ±i) = 2i Im Li_{n,1}(i, ±i) for odd n
        let direct = mpl(&[n, 1], &[i, i]) - mpl(&[n, 1], &[mi, mi]) + mpl(&[n, 1], &[i, mi]) - mpl(&[n, 1], &[mi, i]);
        assert!((direct - rhs).norm() < 1e-10, "n={n}: {direct} vs {rhs}");
        assert!((spec - rhs).norm() < 1e-10, "n={n}: {spec} vs {rhs}");
        assert!(rhs.re.abs() < 1e-20);
    }
}

#[test]
fn zeta_one_five_two() {
    let one = RootOfUnity::one();
    let closed = value(&reduce_mzv_depth3(1, 5, 2).unwrap().fold_zeta_zero());
    let eq = pli(&ix(&[1, 5, 2]), Form::Canonical).unwrap();
    let spec = value(&specialize(&eq, &[one, one, one]).unwrap());
    let direct = mpl(&[1, 5, 2], &[one, one, one]);
    assert!((closed - direct).norm() < 1e-12, "{closed} vs {direct}");
    assert!((spec / 2.0 - closed).norm() < 1e-9, "{spec} vs {closed}");
}

#[test]
fn depth_two_mzv_values() {
    let one = RootOfUnity::one();
    for (a, b) in [(1, 2), (2, 3), (3, 2), (1, 4), (4, 3), (2, 5)] {
        let closed = value(&reduce_mzv_depth2(a, b).unwrap().fold_zeta_zero());
        let direct = mpl(&[a, b], &[one, one]);
        assert!((closed - direct).norm() < 1e-15, "ζ({a},{b}): {closed} vs {direct}");
    }
}
