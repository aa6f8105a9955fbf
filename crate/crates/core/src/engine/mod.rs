//! Recursive construction of `PLi_n(z) = Li_n(z) - (-1)^{|n|-d} Li_n(1/z)` in
//! the generator module of depth `d - 1`.
//!
//! Integrate `∂_{z_1} PLi_n` in `z_1`, keep the part vanishing at `z_1 = 0`
//! and add the asymptotic expansion of `Li_n(1/z)` at `z_1 → 0`.

mod closed;
mod diff;
mod reglim;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::terms::{
    canonical_order, invert_depth1, rat, validate_generator, ConsProd, Generator, Index, LiFactor, LinComb, VarMap,
};

pub use closed::{pli_depth2_closed, pli_depth3_closed};
pub use diff::{diff_z1, iterated_primitive, primitive_z1, DiffExpr};
pub use reglim::reglim_z1;

/// Bumped whenever generated equations could change.
pub const ENGINE_VERSION: &str = "1";

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// Terms from the expansion at `z_1 → 0` keep `Li(1/z')` factors.
    Compact,
    /// Every generator satisfies [`validate_generator`].
    #[default]
    Canonical,
}

impl std::str::FromStr for Form {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "compact" => Ok(Form::Compact),
            "canonical" => Ok(Form::Canonical),
            _ => Err(Error::Parse(format!("unknown form {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Engine,
    ClosedDepth2,
    ClosedDepth3,
}

/// `PLi_n(z_1, …, z_d) = equation`, with `equation` in `d` ambient variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PliResult {
    pub index: Index,
    pub form: Form,
    pub source: Source,
    pub equation: LinComb,
}

impl PliResult {
    /// Weight, depth bound, integrality and (canonical form) generator shape.
    pub fn check_structure(&self) -> Result<()> {
        let d = self.index.depth();
        let w = self.index.weight();
        if self.equation.ambient() != d as u32 {
            return Err(Error::MalformedGenerator("ambient differs from depth".into()));
        }
        if !self.equation.has_integer_coefficients() {
            return Err(Error::MalformedGenerator("non-integer coefficient".into()));
        }
        for (g, _) in self.equation.iter() {
            if g.weight() != w || g.depth() + 1 > d {
                return Err(Error::MalformedGenerator(format!("{g} breaks weight or depth")));
            }
            if self.form == Form::Canonical {
                validate_generator(g, d - 1, w)?;
            }
        }
        Ok(())
    }
}

/// Memo of canonical equations keyed by index; the stored equation uses the
/// local variables `z_1, …, z_d`.
#[derive(Default)]
pub struct Engine {
    memo: RwLock<HashMap<Vec<u32>, Arc<LinComb>>>,
}

impl Engine {
    pub fn new() -> Self {
        Engine::default()
    }

    pub fn global() -> &'static Engine {
        static ENGINE: OnceLock<Engine> = OnceLock::new();
        ENGINE.get_or_init(Engine::new)
    }

    pub fn pli(&self, n: &Index, form: Form) -> Result<PliResult> {
        let equation = match form {
            Form::Canonical => (*self.canonical(n)?).clone(),
            Form::Compact => self.compact(n)?,
        };
        Ok(PliResult { index: n.clone(), form, source: Source::Engine, equation })
    }

    pub fn canonical(&self, n: &Index) -> Result<Arc<LinComb>> {
        if let Some(c) = self.memo.read().unwrap().get(n.entries()) {
            return Ok(c.clone());
        }
        let c = if n.depth() == 1 {
            LinComb::from_generator(Generator::ber(1, 1, n.weight())).neg()
        } else {
            let mut c = self.vanishing_part(n)?;
            c.add(&self.canonicalize(&reglim_part(n))?);
            c
        };
        let c = Arc::new(c);
        // Concurrent computations of the same index produce identical values.
        self.memo.write().unwrap().entry(n.entries().to_vec()).or_insert_with(|| c.clone());
        Ok(c)
    }

    fn compact(&self, n: &Index) -> Result<LinComb> {
        if n.depth() == 1 {
            return Ok((*self.canonical(n)?).clone());
        }
        let mut c = self.vanishing_part(n)?;
        c.add(&reglim_part(n));
        Ok(c)
    }

    /// The `z_1`-primitive of `∂_{z_1} PLi_n` restricted to terms with a Li
    /// factor in `z_1`, i.e. the part vanishing at `z_1 = 0`.
    fn vanishing_part(&self, n: &Index) -> Result<LinComb> {
        let d = n.depth() as u32;
        let e = n.entries();
        let integrand = if e[0] > 1 {
            let mut lower = e.to_vec();
            lower[0] -= 1;
            DiffExpr::new((*self.canonical(&Index::new(lower)?)?).clone(), LinComb::zero(d))
        } else {
            let tail = n.tail().unwrap();
            let p = self.canonical(&tail)?;
            let p1 = p.embed(&VarMap::shift(d - 1, 1));
            let p2 = p.embed(&VarMap::merge_first(d - 1));
            let singles: Vec<ConsProd> = (2..=d).map(ConsProd::single).collect();
            let mut merged = vec![ConsProd::new(1, 2)];
            merged.extend((3..=d).map(ConsProd::single));
            let mut over = p1.clone();
            over.add_term(Generator::li(d, tail.entries().to_vec(), singles), rat(-1));
            over.add_term(Generator::li(d, tail.entries().to_vec(), merged), rat(-1));
            let mut pole = p1;
            pole.sub(&p2);
            DiffExpr::new(over, pole)
        };
        let f = primitive_z1(&integrand)?;
        Ok(f.filter(|g| g.lis().iter().any(|l| l.args[0].start == 1)))
    }

    /// Replaces inverted Li factors through
    /// `Li_m(1/x) = (-1)^{|m|-r} (Li_m(x) - PLi_m(x))` and puts depth-2 factors
    /// with decreasing arguments in increasing order.
    pub fn canonicalize(&self, c: &LinComb) -> Result<LinComb> {
        let mut out = LinComb::zero(c.ambient());
        for (g, q) in c.iter() {
            out.add_scaled(&self.canonicalize_generator(g)?, q);
        }
        Ok(out)
    }

    fn canonicalize_generator(&self, g: &Generator) -> Result<LinComb> {
        let Some(pos) = g.lis().iter().position(LiFactor::any_inverted) else {
            return canonical_order(g);
        };
        let f = &g.lis()[pos];
        let n = g.ambient();
        if !f.args.iter().all(|a| a.inverted) || !f.is_contiguous() || f.args.last().unwrap().end != n {
            return Err(Error::UnsupportedShape(format!("cannot invert the arguments of {g}")));
        }
        let rest = g.without_li(pos);
        let x: Vec<ConsProd> = f.args.iter().map(|a| a.inv()).collect();
        let replaced = if f.depth() == 1 {
            invert_depth1(f.indices[0], x[0], n)?
        } else {
            let m = Index::new(f.indices.clone())?;
            let map = VarMap::new(n, x.iter().map(|a| (a.start, a.end)).collect())?;
            let mut r = LinComb::from_generator(Generator::li(n, f.indices.clone(), x));
            r.sub(&self.canonical(&m)?.embed(&map));
            if m.parity_exponent() % 2 == 1 {
                r = r.neg();
            }
            r
        };
        self.canonicalize(&replaced.mul_generator(&rest)?)
    }
}

/// `-(-1)^{|n|-d}` times the `z_1 → 0` expansion of `Li_n(1/z)`.
fn reglim_part(n: &Index) -> LinComb {
    let r = reglim_z1(n);
    if n.parity_exponent() % 2 == 0 {
        r.neg()
    } else {
        r
    }
}

/// `PLi_n` from the shared engine.
pub fn pli(n: &Index, form: Form) -> Result<PliResult> {
    Engine::global().pli(n, form)
}

/// Canonical form of a combination that may carry inverted or reordered
/// Li factors.
pub fn canonicalize(c: &LinComb) -> Result<LinComb> {
    Engine::global().canonicalize(c)
}

#[cfg(test)]
mod tests;
