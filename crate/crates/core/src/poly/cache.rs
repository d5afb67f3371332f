//! On-disk cache of Groebner bases, keyed by a hash of the ideal and order.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::{GroebnerBasis, MonomialOrder};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct GroebnerCache {
    dir: PathBuf,
}

impl GroebnerCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GroebnerCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex digest of the canonical serialization of `ideal` together with `order`.
    pub fn key(ideal: &Value, order: &MonomialOrder) -> String {
        let canon = json!({ "ideal": ideal, "order": order });
        let digest = Sha256::digest(serde_json::to_string(&canon).expect("json").as_bytes());
        hex::encode(digest.as_slice())
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn load(&self, key: &str) -> Result<Option<GroebnerBasis>> {
        let path = self.path_for(key);
        if !path.exists() {
            return Ok(None);
        }
        let v: Value = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        Ok(Some(GroebnerBasis::from_json(&v)?))
    }

    pub fn store(&self, key: &str, basis: &GroebnerBasis, names: &[String]) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.dir)?;
        let path = self.path_for(key);
        std::fs::write(&path, serde_json::to_string_pretty(&basis.to_json(names))?)?;
        Ok(path)
    }
}
