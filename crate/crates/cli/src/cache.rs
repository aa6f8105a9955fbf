//! On-disk store of computed equations, one JSON record per index and form.
//!
//! Layout: `manifest.json` plus `<form>/<n1>-<n2>-….json`. A manifest with a
//! different engine version invalidates every stored record.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use anyhow::Context;
use plfeq::engine::{pli, Form, PliResult, ENGINE_VERSION};
use plfeq::terms::Index;
use serde::{Deserialize, Serialize};

use crate::record::{to_json, EquationRecord};
use crate::Result;

/// Environment variable naming the cache directory when `--cache` is absent.
pub const CACHE_ENV: &str = "PLFEQ_CACHE_DIR";

const MANIFEST: &str = "manifest.json";
const FORMS: [Form; 2] = [Form::Canonical, Form::Compact];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub engine_version: String,
    pub forms: Vec<Form>,
}

impl Manifest {
    fn current() -> Self {
        Manifest { engine_version: ENGINE_VERSION.into(), forms: FORMS.to_vec() }
    }
}

#[derive(Clone, Debug)]
pub struct EquationCache {
    dir: PathBuf,
}

fn form_dir(form: Form) -> &'static str {
    match form {
        Form::Canonical => "canonical",
        Form::Compact => "compact",
    }
}

fn file_name(n: &Index) -> String {
    let parts: Vec<String> = n.entries().iter().map(u32::to_string).collect();
    format!("{}.json", parts.join("-"))
}

/// Writes through a temporary file so concurrent writers never expose a
/// partial record.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    static COUNTER: AtomicU64 = AtomicU64::new(0);
    let tmp = path.with_extension(format!(
        "tmp.{}.{}",
        std::process::id(),
        COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

impl EquationCache {
    /// Opens or creates the cache, discarding records from other engine versions.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let manifest_path = dir.join(MANIFEST);
        let stale = match fs::read_to_string(&manifest_path) {
            Ok(s) => serde_json::from_str::<Manifest>(&s).map_or(true, |m| m != Manifest::current()),
            Err(_) => true,
        };
        if stale {
            for form in FORMS {
                let sub = dir.join(form_dir(form));
                if sub.exists() {
                    fs::remove_dir_all(&sub).with_context(|| format!("clearing {}", sub.display()))?;
                }
            }
        }
        for form in FORMS {
            fs::create_dir_all(dir.join(form_dir(form)))?;
        }
        if stale {
            write_atomic(&manifest_path, &to_json(&Manifest::current())?)?;
        }
        Ok(EquationCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, n: &Index, form: Form) -> PathBuf {
        self.dir.join(form_dir(form)).join(file_name(n))
    }

    /// A stored record, if present and valid; unreadable records count as misses.
    pub fn get(&self, n: &Index, form: Form) -> Option<PliResult> {
        let s = fs::read_to_string(self.path(n, form)).ok()?;
        let rec: EquationRecord = serde_json::from_str(&s).ok()?;
        let r = rec.to_result().ok()?;
        (r.index == *n && r.form == form).then_some(r)
    }

    pub fn put(&self, r: &PliResult) -> Result<()> {
        write_atomic(&self.path(&r.index, r.form), &to_json(&EquationRecord::new(r))?)
    }

    pub fn get_or_compute(&self, n: &Index, form: Form) -> Result<PliResult> {
        if let Some(r) = self.get(n, form) {
            return Ok(r);
        }
        let r = pli(n, form)?;
        self.put(&r)?;
        Ok(r)
    }
}

/// `pli` through an optional cache.
pub fn equation(cache: Option<&EquationCache>, n: &Index, form: Form) -> Result<PliResult> {
    match cache {
        Some(c) => c.get_or_compute(n, form),
        None => Ok(pli(n, form)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hit_after_put() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = EquationCache::open(tmp.path()).unwrap();
        let n: Index = "1,2".parse().unwrap();
        assert!(cache.get(&n, Form::Canonical).is_none());
        let r = cache.get_or_compute(&n, Form::Canonical).unwrap();
        assert_eq!(cache.get(&n, Form::Canonical), Some(r));
        assert!(cache.get(&n, Form::Compact).is_none());
    }

    #[test]
    fn version_change_invalidates() {
        let tmp = tempfile::tempdir().unwrap();
        let n: Index = "2,1".parse().unwrap();
        EquationCache::open(tmp.path()).unwrap().get_or_compute(&n, Form::Canonical).unwrap();
        let old = Manifest { engine_version: "0".into(), forms: FORMS.to_vec() };
        fs::write(tmp.path().join(MANIFEST), to_json(&old).unwrap()).unwrap();
        let cache = EquationCache::open(tmp.path()).unwrap();
        assert!(cache.get(&n, Form::Canonical).is_none());
        let m: Manifest = serde_json::from_str(&fs::read_to_string(tmp.path().join(MANIFEST)).unwrap()).unwrap();
        assert_eq!(m, Manifest::current());
    }

    #[test]
    fn corrupt_record_is_a_miss() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = EquationCache::open(tmp.path()).unwrap();
        let n: Index = "1,1,2".parse().unwrap();
        let r = cache.get_or_compute(&n, Form::Canonical).unwrap();
        let path = cache.path(&n, Form::Canonical);
        let bad = fs::read_to_string(&path).unwrap().replacen("\"coeff\": \"", "\"coeff\": \"x", 1);
        fs::write(&path, bad).unwrap();
        assert!(cache.get(&n, Form::Canonical).is_none());
        assert_eq!(cache.get_or_compute(&n, Form::Canonical).unwrap(), r);
        assert!(cache.get(&n, Form::Canonical).is_some());
    }
}
