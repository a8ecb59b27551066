use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::weyl::SubgroupSpec;

pub const SCHEMA: &str = "wcw/1";

/// Serialized W-CW complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WcwDocument {
    pub schema: String,
    pub datum: String,
    pub family: Vec<SubgroupSpec>,
    pub cells: Vec<CellEntry>,
    pub boundary: Vec<BoundaryEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellEntry {
    pub id: String,
    pub dim: usize,
    pub isotropy: SubgroupSpec,
}

/// `from` is the higher-dimensional cell; its boundary contains
/// `mult · (translate · to)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryEntry {
    pub from: String,
    pub to: String,
    #[serde(default = "identity_word")]
    pub translate: String,
    pub mult: i64,
}

fn identity_word() -> String {
    "e".into()
}

impl WcwDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
