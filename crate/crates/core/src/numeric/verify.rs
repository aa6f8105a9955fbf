use serde::{Deserialize, Serialize};

use super::eval::Evaluator;
use super::real::Real;
use super::sample::sample_domain_point;
use crate::engine::{Form, PliResult};
use crate::error::{Error, Result};
use crate::terms::LinComb;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub samples: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { samples: 3, tolerance: 1e-10, seed: 1 }
    }
}

/// Outcome of a numerical check of a functional equation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub index: Vec<u32>,
    pub form: String,
    pub samples: usize,
    pub tolerance: f64,
    /// `max |LHS - RHS|` over the sample points.
    pub max_error: f64,
    /// Largest estimated evaluation error on either side.
    pub max_error_estimate: f64,
    pub errors: Vec<f64>,
    pub skipped: usize,
    pub precision: String,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Evaluation target relative to the tolerance.
const TARGET_FACTOR: f64 = 1e-6;
const RESAMPLE_LIMIT: usize = 16;

/// Checks `Li_n(z) - (-1)^{|n|-d} Li_n(1/z) = equation` at sample points.
pub fn verify_feq<T: Real>(result: &PliResult, samples: usize, tol: f64) -> Result<VerifyReport> {
    verify_feq_with::<T>(result, &VerifyOptions { samples, tolerance: tol, ..Default::default() })
}

pub fn verify_feq_with<T: Real>(result: &PliResult, opts: &VerifyOptions) -> Result<VerifyReport> {
    if !(opts.tolerance > 0.0) {
        return Err(Error::Precondition(format!("tolerance {} must be positive", opts.tolerance)));
    }
    let n = result.index.entries().to_vec();
    let d = n.len();
    let target = (opts.tolerance * TARGET_FACTOR).max(T::epsilon() * 1e3);
    let mut errors = Vec::new();
    let mut estimate: f64 = 0.0;
    let mut skipped = 0;
    let mut seed = opts.seed;
    while errors.len() < opts.samples {
        let p = sample_domain_point::<T>(d, seed)?;
        seed += 1;
        let mut ev = Evaluator::new(p.z, target);
        let sides = ev.parity_combination(&n).and_then(|l| Ok((l, ev.lincomb(&result.equation)?)));
        match sides {
            Ok((lhs, rhs)) => {
                errors.push((lhs - rhs).abs());
                estimate = estimate.max(lhs.error).max(rhs.error);
            }
            Err(Error::Domain(_) | Error::Precision(_)) if skipped < RESAMPLE_LIMIT => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    let max_error = errors.iter().copied().fold(0.0, f64::max);
    let mut notes = vec!["quadrature error estimates are heuristic".to_string()];
    if estimate > opts.tolerance {
        notes.push(format!("evaluation error estimate {estimate:.2e} exceeds the tolerance"));
    }
    Ok(VerifyReport {
        index: n,
        form: match result.form {
            Form::Canonical => "canonical",
            Form::Compact => "compact",
        }
        .into(),
        samples: errors.len(),
        tolerance: opts.tolerance,
        max_error,
        max_error_estimate: estimate,
        pass: max_error <= opts.tolerance && !max_error.is_nan(),
        errors,
        skipped,
        precision: T::NAME.into(),
        notes,
    })
}

/// `max |a - b|` over `samples` points of dimension `a.ambient()`.
pub fn compare_lincombs<T: Real>(a: &LinComb, b: &LinComb, samples: usize, seed: u64, target: f64) -> Result<f64> {
    if a.ambient() != b.ambient() {
        return Err(Error::Precondition("combinations over different variables".into()));
    }
    let mut worst: f64 = 0.0;
    for s in 0..samples as u64 {
        let p = sample_domain_point::<T>(a.ambient() as usize, seed + s)?;
        let mut ev = Evaluator::new(p.z, target);
        worst = worst.max((ev.lincomb(a)? - ev.lincomb(b)?).abs());
    }
    Ok(worst)
}
