//! The weight file: one JSON object tagged by `"type"`.
//!
//! ```json
//! {"type":"step","breakpoints":[0,0.5,1],"values":[2,1]}
//! {"type":"power","a":0.5,"alpha":-0.5}
//! ```
//!
//! Floats are written in shortest round-trip form, so a weight read back from
//! its own file is bit-identical.

use std::path::Path;

use a1tk_core::{PowerWeight, StepWeight, Weight, WeightError};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum WeightFile {
    Step { breakpoints: Vec<f64>, values: Vec<f64> },
    Power { a: f64, alpha: f64 },
}

impl From<&Weight> for WeightFile {
    fn from(w: &Weight) -> Self {
        match w {
            Weight::Step(s) => WeightFile::Step { breakpoints: s.breakpoints().to_vec(), values: s.values().to_vec() },
            Weight::Power(g) => WeightFile::Power { a: g.coefficient(), alpha: g.exponent() },
        }
    }
}

impl TryFrom<WeightFile> for Weight {
    type Error = WeightError;

    fn try_from(file: WeightFile) -> Result<Self, WeightError> {
        Ok(match file {
            WeightFile::Step { breakpoints, values } => Weight::Step(StepWeight::new(breakpoints, values)?),
            WeightFile::Power { a, alpha } => Weight::Power(PowerWeight::new(a, alpha)?),
        })
    }
}

pub fn parse_weight(text: &str) -> Result<Weight, CliError> {
    let file: WeightFile =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed weight file: {e}")))?;
    Weight::try_from(file).map_err(|e| CliError::Input(format!("invalid weight: {e}")))
}

pub fn read_weight(path: &Path) -> Result<Weight, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_weight(&text).map_err(|e| match e {
        CliError::Input(msg) => CliError::Input(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Compact JSON followed by a newline.
pub fn write_weight(w: &Weight) -> String {
    let mut text = serde_json::to_string(&WeightFile::from(w)).expect("weight files contain only finite floats");
    text.push('\n');
    text
}
