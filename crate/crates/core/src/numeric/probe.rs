use num_complex::Complex;

use super::series::eval_li_series;
use crate::error::Result;
use crate::root::RootOfUnity;

/// Extrapolates `f(ε) = L + a ε + o(ε)` to `ε = 0` from samples at `ε_1 > ε_2`.
pub fn richardson(e1: f64, v1: Complex<f64>, e2: f64, v2: Complex<f64>) -> Complex<f64> {
    (v2 * e1 - v1 * e2) / (e1 - e2)
}

/// Diagnostic radial limit of `Li_n` at roots of unity: the series at
/// `ρ_i (1 - ε)` for the given `ε`, extrapolated linearly in `ε`.
/// Only logarithmically accurate; certified values use
/// [`super::eval_li_at_roots`] and [`super::li_at_root_depth1`].
pub fn radial_limit(n: &[u32], roots: &[RootOfUnity], eps: (f64, f64)) -> Result<Complex<f64>> {
    let at = |e: f64| -> Result<Complex<f64>> {
        let z: Vec<Complex<f64>> = roots
            .iter()
            .map(|r| {
                let (re, im) = r.to_f64();
                Complex::new(re, im) * (1.0 - e)
            })
            .collect();
        Ok(eval_li_series::<f64>(n, &z, 1e-14)?.to_c64())
    };
    Ok(richardson(eps.0, at(eps.0)?, eps.1, at(eps.1)?))
}
