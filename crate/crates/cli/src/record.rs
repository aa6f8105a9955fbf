//! JSON records shared by the cache and the `json` output format.

use plfeq::engine::{Form, PliResult, Source, ENGINE_VERSION};
use plfeq::numeric::VerifyReport;
use plfeq::terms::{Index, LinComb, LinCombJson};
use serde::{Deserialize, Serialize};

use crate::Result;

/// One functional equation `PLi_index(z_1, …, z_d) = equation`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquationRecord {
    pub index: Vec<u32>,
    pub weight: u32,
    pub depth: usize,
    pub form: Form,
    pub source: Source,
    pub equation: LinCombJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerifyReport>,
}

impl EquationRecord {
    pub fn new(r: &PliResult) -> Self {
        EquationRecord {
            index: r.index.entries().to_vec(),
            weight: r.index.weight(),
            depth: r.index.depth(),
            form: r.form,
            source: r.source,
            equation: LinCombJson::from(&r.equation),
            verification: None,
        }
    }

    /// Rebuilds the result, checking the generators and the structure.
    pub fn to_result(&self) -> Result<PliResult> {
        let index = Index::new(self.index.clone())?;
        if index.weight() != self.weight || index.depth() != self.depth {
            return Err(anyhow::anyhow!("record for {index} has inconsistent weight or depth"));
        }
        let equation = LinComb::try_from(&self.equation)?;
        let r = PliResult { index, form: self.form, source: self.source, equation };
        r.check_structure()?;
        Ok(r)
    }
}

/// Document produced by `table --format json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub engine_version: String,
    pub form: Form,
    pub max_weight: u32,
    pub count: usize,
    pub equations: Vec<EquationRecord>,
}

impl TableRecord {
    pub fn new(form: Form, max_weight: u32, results: &[PliResult]) -> Self {
        TableRecord {
            engine_version: ENGINE_VERSION.into(),
            form,
            max_weight,
            count: results.len(),
            equations: results.iter().map(EquationRecord::new).collect(),
        }
    }
}

/// Document produced by `verify --format json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub max_weight: u32,
    pub samples: usize,
    pub tolerance: f64,
    pub precision: String,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
    pub reports: Vec<VerifyReport>,
}

pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}
