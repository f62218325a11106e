//! Matrix JSON: `{"n": 3, "blocks": [1,1,1], "entries": [["0","0","0"], ...]}`.

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, ParseError, Result};
use crate::lie::{FlagContext, LieElement};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub blocks: Vec<usize>,
    pub entries: Vec<Vec<Rational>>,
}

impl MatrixJson {
    pub fn into_element(self) -> Result<LieElement> {
        let ctx = FlagContext::with_size(self.n, self.blocks)?;
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(ParseError::Matrix(format!("entries must be {0}×{0}", self.n)).into());
        }
        LieElement::from_rows(ctx, &self.entries)
    }

    pub fn parse(text: &str) -> Result<LieElement> {
        let m: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(ParseError::Matrix(e.to_string())))?;
        m.into_element()
    }
}

impl From<&LieElement> for MatrixJson {
    fn from(x: &LieElement) -> Self {
        MatrixJson {
            n: x.n(),
            blocks: x.context().blocks().to_vec(),
            entries: x.rows(),
        }
    }
}
