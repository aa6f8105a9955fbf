use num_rational::BigRational;

use super::*;
use crate::terms::{expand_ber_to_logs, LogExpansion, LogMonomial};

fn ix(v: &[u32]) -> Index {
    Index::new(v.to_vec()).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn l(idx: &[u32], args: &[ConsProd]) -> LiFactor {
    LiFactor::new(idx.to_vec(), args.to_vec())
}

#[test]
fn depth_one() {
    let r = pli(&ix(&[3]), Form::Canonical).unwrap();
    assert_eq!(r.equation, LinComb::from_generator(Generator::ber(1, 1, 3)).neg());
}

#[test]
fn one_two_canonical() {
    let z1 = ConsProd::single(1);
    let z2 = ConsProd::single(2);
    let z12 = ConsProd::new(1, 2);
    let g = |bers: Vec<(u32, u32)>, lis: Vec<LiFactor>| Generator::new(2, bers, lis).unwrap();
    let expect = LinComb::from_terms(
        2,
        [
            (g(vec![(1, 2)], vec![l(&[1], &[z1])]), rat(1)),
            (g(vec![(1, 1)], vec![l(&[2], &[z1])]), rat(-1)),
            (g(vec![], vec![l(&[3], &[z1])]), rat(1)),
            (g(vec![(2, 2)], vec![l(&[1], &[z1])]), rat(-1)),
            (g(vec![], vec![l(&[3], &[z12])]), rat(-1)),
            (g(vec![], vec![l(&[3], &[z2])]), rat(2)),
            (g(vec![(2, 3)], vec![]), rat(2)),
            (g(vec![(1, 1)], vec![l(&[2], &[z2])]), rat(-1)),
            (g(vec![(1, 1), (2, 2)], vec![]), rat(-1)),
        ],
    );
    assert_eq!(pli(&ix(&[1, 2]), Form::Canonical).unwrap().equation, expect);
}

/// `A = log(-z_1 z_2)`, `B = log(-z_2)`, `ζ(2) = -(2πi)^2/24`.
fn eq_one_two_log_form() -> LogExpansion {
    let z1 = ConsProd::single(1);
    let z2 = ConsProd::single(2);
    let z12 = ConsProd::new(1, 2);
    let mut e = LogExpansion::zero(2);
    let mut add = |p: u32, logs: Vec<(u32, u32)>, lis: Vec<LiFactor>, c: BigRational| {
        e.add_term(LogMonomial { two_pi_i: p, logs, lis }, c)
    };
    let zeta2 = q(-1, 24);
    add(0, vec![], vec![l(&[3], &[z1])], q(1, 1));
    add(0, vec![], vec![l(&[3], &[z2])], q(2, 1));
    add(0, vec![], vec![l(&[3], &[z12])], q(-1, 1));
    add(2, vec![(2, 1)], vec![], zeta2.clone() * q(2, 1));
    add(0, vec![(1, 1)], vec![l(&[2], &[z2])], q(-1, 1));
    add(0, vec![(1, 1)], vec![l(&[2], &[z1])], q(-1, 1));
    add(2, vec![(1, 1)], vec![], -zeta2);
    add(0, vec![(1, 1), (2, 2)], vec![], q(-1, 2));
    add(0, vec![(1, 2)], vec![l(&[1], &[z1])], q(1, 2));
    add(0, vec![(2, 2)], vec![l(&[1], &[z1])], q(-1, 2));
    add(0, vec![(2, 3)], vec![], q(1, 3));
    e
}

#[test]
fn one_two_log_basis() {
    let r = pli(&ix(&[1, 2]), Form::Canonical).unwrap();
    assert_eq!(expand_ber_to_logs(&r.equation), eq_one_two_log_form());
}

#[test]
fn compact_one_two_matches_closed_form_syntactically() {
    let e = pli(&ix(&[1, 2]), Form::Compact).unwrap().equation;
    let c = pli_depth2_closed(1, 2, Form::Compact).unwrap().equation;
    assert_eq!(e, c);
    assert!(e.has_inverted());
}

#[test]
fn structure_up_to_weight_six() {
    for n in Index::all_up_to_weight(6) {
        for form in [Form::Canonical, Form::Compact] {
            let r = pli(&n, form).unwrap();
            r.check_structure().unwrap_or_else(|e| panic!("{n}: {e}"));
            if n.depth() > 1 && form == Form::Canonical {
                assert!(r.equation.max_depth() < n.depth());
            }
        }
    }
}

#[test]
fn closed_forms_agree_symbolically() {
    for n in Index::all_up_to_weight(7) {
        let e = n.entries();
        let engine = pli(&n, Form::Canonical).unwrap().equation;
        match e.len() {
            2 => {
                let c = pli_depth2_closed(e[0], e[1], Form::Canonical).unwrap();
                assert_eq!(c.equation, engine, "{n}");
            }
            3 => {
                let c = pli_depth3_closed(e[0], e[1], e[2], Form::Canonical).unwrap();
                assert_eq!(c.equation, engine, "{n}");
            }
            _ => {}
        }
    }
}

/// `∂_{z_1} PLi_n` from the recursion step, in canonical form.
fn expected_derivative(n: &Index) -> DiffExpr {
    let d = n.depth() as u32;
    let e = n.entries();
    if e[0] > 1 {
        let mut lower = e.to_vec();
        lower[0] -= 1;
        return DiffExpr::new((*Engine::global().canonical(&ix(&lower)).unwrap()).clone(), LinComb::zero(d));
    }
    let tail = n.tail().unwrap();
    let p = Engine::global().canonical(&tail).unwrap();
    let p1 = p.embed(&VarMap::shift(d - 1, 1));
    let p2 = p.embed(&VarMap::merge_first(d - 1));
    let mut over = p1.clone();
    over.add_term(Generator::li(d, tail.entries().to_vec(), (2..=d).map(ConsProd::single).collect()), rat(-1));
    let mut merged = vec![ConsProd::new(1, 2)];
    merged.extend((3..=d).map(ConsProd::single));
    over.add_term(Generator::li(d, tail.entries().to_vec(), merged), rat(-1));
    let mut pole = p1;
    pole.sub(&p2);
    DiffExpr::new(over, pole)
}

#[test]
fn derivative_round_trip() {
    for n in Index::all_up_to_weight(6) {
        if n.depth() < 2 {
            continue;
        }
        let r = pli(&n, Form::Canonical).unwrap();
        assert_eq!(diff_z1(&r.equation).unwrap(), expected_derivative(&n), "{n}");
    }
}

#[test]
fn concurrent_memo_is_consistent() {
    let engine = Arc::new(Engine::new());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let e = engine.clone();
            std::thread::spawn(move || e.pli(&ix(&[2, 1, 2]), Form::Canonical).unwrap().equation)
        })
        .collect();
    let results: Vec<LinComb> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(results.windows(2).all(|w| w[0] == w[1]));
    assert_eq!(results[0], pli(&ix(&[2, 1, 2]), Form::Canonical).unwrap().equation);
}
