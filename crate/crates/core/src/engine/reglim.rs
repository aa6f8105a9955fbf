use crate::bernoulli::binomial;
use crate::terms::{int, ConsProd, Generator, Index, LiFactor, LinComb};

fn weak_compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        weak_compositions(total - k, parts - 1, prefix, out);
        prefix.pop();
    }
}

/// Non-vanishing part of `Li_n(1/z)` as `z_1 → 0`:
/// `(-1)^{1+n_1} Σ_{|k|=n_1} ber_{k_1}(z_{1,d}) Li_{n'+k'}(1/z') Π_{μ≥2} C(n_μ-1+k_μ, k_μ)`.
pub fn reglim_z1(n: &Index) -> LinComb {
    let e = n.entries();
    let d = e.len();
    let amb = d as u32;
    let mut ks = Vec::new();
    weak_compositions(e[0], d, &mut Vec::new(), &mut ks);
    let sign = if e[0] % 2 == 1 { 1 } else { -1 };
    let mut out = LinComb::zero(amb);
    for k in ks {
        let mut c = num_bigint::BigInt::from(sign);
        for mu in 1..d {
            c *= binomial((e[mu] - 1 + k[mu]) as u64, k[mu] as u64);
        }
        let mut g = Generator::ber(amb, 1, k[0]);
        if d > 1 {
            let idx: Vec<u32> = (1..d).map(|mu| e[mu] + k[mu]).collect();
            let args: Vec<ConsProd> = (2..=amb).map(|i| ConsProd::single(i).inv()).collect();
            g = g.with_li(LiFactor::new(idx, args));
        }
        out.add_term(g, int(c));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::rat;

    #[test]
    fn depth_two_examples() {
        // (1, m): m Li_{m+1}(1/z_2) + ber_1(z_1 z_2) Li_m(1/z_2)
        let m = 3;
        let r = reglim_z1(&Index::new(vec![1, m]).unwrap());
        assert_eq!(r.len(), 2);
        let inv = ConsProd::single(2).inv();
        assert_eq!(r.coeff(&Generator::li(2, vec![m + 1], vec![inv])), rat(m as i64));
        assert_eq!(r.coeff(&Generator::ber(2, 1, 1).with_li(LiFactor::new(vec![m], vec![inv]))), rat(1));
        assert_eq!(reglim_z1(&Index::new(vec![2, 1]).unwrap()).len(), 3);
    }

    #[test]
    fn depth_one_is_inversion() {
        let r = reglim_z1(&Index::new(vec![4]).unwrap());
        assert_eq!(r, LinComb::from_generator(Generator::ber(1, 1, 4)).neg());
    }
}
