//! JSON documents: explicit posets and point functions.
//!
//! Function document: `{"poset": "<name or file>", "values": {"<element>": "<scalar>"}}`.
//! Values are emitted in canonical element order.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{PosetError, Result};
use crate::poset::{ExplicitPoset, PosetHandle, PosetRegistry};
use crate::scalar::GaussianRational;
use crate::transforms::FiniteSupportFunction;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionDocument {
    pub poset: String,
    pub values: Map<String, Value>,
}

impl FunctionDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| PosetError::Document(e.to_string()))
    }

    pub fn from_function(poset_label: &str, f: &FiniteSupportFunction) -> Self {
        let values = f
            .iter()
            .map(|(x, v)| (x.to_string(), Value::String(v.to_string())))
            .collect();
        Self {
            poset: poset_label.to_string(),
            values,
        }
    }

    /// Decodes the values against `p`. Scalars may be JSON strings or integers.
    pub fn to_function(&self, p: &PosetHandle) -> Result<FiniteSupportFunction> {
        let entries = self
            .values
            .iter()
            .map(|(k, v)| {
                let x = p.parse_element(k)?;
                let value: GaussianRational = match v {
                    Value::String(s) => s.parse()?,
                    Value::Number(n) => n.to_string().parse()?,
                    other => return Err(PosetError::Document(format!("scalar for `{k}` must be a string, got {other}"))),
                };
                Ok((x, value))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteSupportFunction::from_entries(p, entries)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub fn load_poset_file(path: &Path) -> Result<PosetHandle> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PosetError::Document(format!("{}: {e}", path.display())))?;
    Ok(PosetHandle::new(ExplicitPoset::from_json(&path.display().to_string(), &text)?))
}

/// A registry name, or else a path to an explicit-poset document.
pub fn resolve_poset(name_or_path: &str) -> Result<PosetHandle> {
    let registry = PosetRegistry::with_builtins();
    match registry.create(name_or_path) {
        Ok(p) => Ok(p),
        Err(_) if Path::new(name_or_path).is_file() => load_poset_file(Path::new(name_or_path)),
        Err(e) => Err(e),
    }
}
