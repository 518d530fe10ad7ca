//! JSON cone files: `{"dim": d, "inequalities": [[a_1, ..., a_d], ...]}`,
//! each row meaning `a · y >= 0`. Entries are integers or `"p/q"` strings.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Cone, ConeError};
use crate::arrangement::Entry;
use crate::rational::Rational;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeFile {
    pub dim: usize,
    pub inequalities: Vec<Vec<Entry>>,
}

#[derive(Debug, thiserror::Error)]
pub enum ConeFileError {
    #[error("cannot read cone file: {0}")]
    Io(#[from] std::io::Error),
    #[error("bad cone file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad entry: {0}")]
    Entry(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

impl ConeFile {
    pub fn parse(text: &str) -> Result<ConeFile, ConeFileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: &Path) -> Result<ConeFile, ConeFileError> {
        ConeFile::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_cone(&self) -> Result<Cone, ConeFileError> {
        let rows = self
            .inequalities
            .iter()
            .map(|row| row.iter().map(|e| e.to_rational().map_err(|e| ConeFileError::Entry(e.to_string()))).collect())
            .collect::<Result<Vec<Vec<Rational>>, _>>()?;
        Ok(Cone::with_dim(self.dim, rows, None, None)?)
    }
}
