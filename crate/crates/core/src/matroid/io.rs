//! JSON matroid files.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Backend, GroundSet, Matroid, MatroidError, Result, VectorData};
use crate::bitset::ElementSet;
use crate::field::{FieldElement, FieldKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendName {
    Vectors,
    Lines,
    Circuits,
}

impl fmt::Display for BackendName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BackendName::Vectors => "vectors",
            BackendName::Lines => "lines",
            BackendName::Circuits => "circuits",
        })
    }
}

/// On-disk form: `{"elements", "backend", "field", "data"}`.
///
/// Vectors are arrays of field-element strings; lines and circuits are
/// arrays of element indices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatroidFile {
    pub elements: Vec<String>,
    pub backend: BackendName,
    #[serde(default = "default_field")]
    pub field: String,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

fn default_field() -> String {
    "Q".into()
}

fn sets_to_json(sets: &[ElementSet]) -> Value {
    Value::Array(sets.iter().map(|s| serde_json::to_value(s).unwrap()).collect())
}

fn sets_from_json(data: &Value, size: usize) -> Result<Vec<ElementSet>> {
    let raw: Vec<Vec<usize>> =
        serde_json::from_value(data.clone()).map_err(|e| MatroidError::Format(format!("expected index arrays: {e}")))?;
    raw.into_iter()
        .map(|v| match v.iter().find(|&&e| e >= size) {
            Some(&e) => Err(MatroidError::ElementOutOfRange { element: e, size }),
            None => Ok(v.into_iter().collect()),
        })
        .collect()
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        let elements = m.ground().labels();
        let (backend, field, data) = match m.backend() {
            Backend::Vectors(v) => {
                let rows: Vec<Value> = (0..v.len())
                    .map(|i| Value::Array(v.vector(i).iter().map(|x| Value::String(x.to_string())).collect()))
                    .collect();
                (BackendName::Vectors, v.kind().to_string(), Value::Array(rows))
            }
            Backend::Lines(l) => (BackendName::Lines, "Q".to_string(), sets_to_json(l.lines())),
            Backend::Circuits(c) => (BackendName::Circuits, "Q".to_string(), sets_to_json(c.circuits())),
            Backend::Minor(_) => (BackendName::Circuits, "Q".to_string(), sets_to_json(&m.circuits()?)),
        };
        Ok(MatroidFile { elements, backend, field, data, comment: None })
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        let ground = GroundSet::labeled(self.elements.clone())?;
        let size = ground.size();
        match self.backend {
            BackendName::Vectors => {
                let kind = FieldKind::from_str(&self.field)?;
                let raw: Vec<Vec<String>> = serde_json::from_value(self.data.clone())
                    .map_err(|e| MatroidError::Format(format!("expected arrays of strings: {e}")))?;
                let rows: Vec<Vec<FieldElement>> = raw
                    .iter()
                    .map(|r| r.iter().map(|s| kind.parse_element(s)).collect::<Result<_, _>>())
                    .collect::<Result<_, _>>()?;
                if rows.len() != size {
                    return Err(MatroidError::LabelCount { expected: rows.len(), found: size });
                }
                Matroid::from_vectors(ground, VectorData::from_elements(kind, &rows)?)
            }
            BackendName::Lines => Matroid::from_lines(ground, sets_from_json(&self.data, size)?),
            BackendName::Circuits => Matroid::from_circuits(ground, sets_from_json(&self.data, size)?),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| MatroidError::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("matroid file serializes");
        s.push('\n');
        s
    }
}

impl Matroid {
    pub fn from_json(text: &str) -> Result<Matroid> {
        MatroidFile::parse(text)?.to_matroid()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(MatroidFile::from_matroid(self)?.to_json())
    }
}
