//! JSON file format: `{"dim": d, "hyperplanes": [[entries]]}`.
//!
//! Entries are JSON integers or strings `"p/q"`. An optional `offsets`
//! array is accepted only if every offset is zero.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Arrangement, ArrangementError};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn to_rational(&self) -> Result<Rational, ArrangementError> {
        match self {
            Entry::Int(n) => Ok(rational::int(*n)),
            Entry::Text(s) => rational::parse(s).map_err(|e| ArrangementError::Parse(e.to_string())),
        }
    }

    pub fn from_rational(q: &Rational) -> Entry {
        match rational::to_i64(q) {
            Some(n) => Entry::Int(n),
            None => Entry::Text(rational::format(q)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrangementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    pub hyperplanes: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<Vec<Entry>>,
}

impl ArrangementFile {
    pub fn from_arrangement(arr: &Arrangement, name: Option<String>) -> ArrangementFile {
        ArrangementFile {
            name,
            dim: arr.dim(),
            hyperplanes: arr.hyperplanes().iter().map(|h| h.normal().iter().map(Entry::from_rational).collect()).collect(),
            offsets: None,
        }
    }

    pub fn to_arrangement(&self) -> Result<Arrangement, ArrangementError> {
        if let Some(offsets) = &self.offsets {
            for (index, b) in offsets.iter().enumerate() {
                if !b.to_rational()?.is_zero() {
                    return Err(ArrangementError::Affine { index });
                }
            }
        }
        let raw = self
            .hyperplanes
            .iter()
            .map(|row| row.iter().map(Entry::to_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::canonicalize(&raw, self.dim)
    }

    pub fn parse(text: &str) -> Result<ArrangementFile, ArrangementError> {
        serde_json::from_str(text).map_err(|e| ArrangementError::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<ArrangementFile, ArrangementError> {
        let text = std::fs::read_to_string(path).map_err(|e| ArrangementError::Parse(format!("{}: {e}", path.display())))?;
        ArrangementFile::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("arrangement file serializes")
    }
}

impl Arrangement {
    pub fn from_json(text: &str) -> Result<Arrangement, ArrangementError> {
        ArrangementFile::parse(text)?.to_arrangement()
    }

    pub fn to_json(&self) -> String {
        ArrangementFile::from_arrangement(self, None).to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_entries() {
        let a = Arrangement::from_json(r#"{"dim": 2, "hyperplanes": [[2, "1/2"], [0, "-3"]]}"#).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(a.normal(0), &[rational::int(1), rational::frac(1, 4)]);
    }

    #[test]
    fn rejects_affine_offsets() {
        let err = Arrangement::from_json(r#"{"dim": 1, "hyperplanes": [[1], [2]], "offsets": [0, 1]}"#).unwrap_err();
        assert!(matches!(err, ArrangementError::Affine { index: 1 }));
        assert!(Arrangement::from_json(r#"{"dim": 1, "hyperplanes": [[1]], "offsets": [0]}"#).is_ok());
    }

    #[test]
    fn round_trips() {
        let a = Arrangement::from_json(r#"{"dim": 2, "hyperplanes": [[3, "1/7"], [0, 1]]}"#).unwrap();
        assert_eq!(Arrangement::from_json(&a.to_json()).unwrap(), a);
    }
}
