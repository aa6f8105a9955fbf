use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::real::{c, Real};
use crate::error::{Error, Result};

/// Minimal distance of every consecutive product from `[0, ∞)`.
pub const RAY_MARGIN: f64 = 0.05;

const MODULUS: (f64, f64) = (0.3, 0.9);
const PHASE_GAP: f64 = 0.2;
const BUDGET: usize = 1_000_000;

/// A point `z ∈ ℂ^d` whose consecutive products all avoid `[0, ∞)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SamplePoint<T> {
    pub z: Vec<Complex<T>>,
}

/// Distance from `[0, ∞)`.
pub fn ray_distance(w: Complex<f64>) -> f64 {
    if w.re <= 0.0 {
        w.norm()
    } else {
        w.im.abs()
    }
}

fn admissible(z: &[Complex<f64>]) -> bool {
    (0..z.len()).all(|i| {
        let mut p = Complex::new(1.0, 0.0);
        z[i..].iter().all(|x| {
            p *= x;
            ray_distance(p) >= RAY_MARGIN
        })
    })
}

/// Deterministic point for `seed` with moduli in `[0.3, 0.9]` and phases in
/// `(0.2, 2π - 0.2)`, resampled until every `z_i ⋯ z_j` clears the ray by
/// [`RAY_MARGIN`]. The coordinates are exact `f64` values, so every scalar
/// type sees the same point.
pub fn sample_domain_point<T: Real>(d: usize, seed: u64) -> Result<SamplePoint<T>> {
    if d == 0 {
        return Err(Error::Precondition("sample point of dimension 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    for _ in 0..BUDGET {
        let z: Vec<Complex<f64>> = (0..d)
            .map(|_| {
                let r = rng.gen_range(MODULUS.0..=MODULUS.1);
                let phi = rng.gen_range(PHASE_GAP..tau - PHASE_GAP);
                Complex::from_polar(r, phi)
            })
            .collect();
        if admissible(&z) {
            return Ok(SamplePoint { z: z.iter().map(|x| c(T::from_f64(x.re), T::from_f64(x.im))).collect() });
        }
    }
    Err(Error::Domain(format!("no admissible point of dimension {d} after {BUDGET} draws")))
}
