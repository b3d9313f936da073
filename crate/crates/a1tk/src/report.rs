//! Canonical report output.
//!
//! JSON reports are compact, keys sorted, floats written as `d.dddddddddddddddde±x`
//! (17 significant digits). Parsing a report and writing it again reproduces the
//! bytes. Non-finite floats become `null`.

use std::io;

use a1tk_core::reverse_holder::SweepRow;
use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::Value;

use crate::error::CliError;

struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(writer, "{}", float17(value))
        } else {
            CompactFormatter.write_null(writer)
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// 17 significant digits in scientific notation.
pub fn float17(value: f64) -> String {
    format!("{value:.16e}")
}

/// Serialises `value` (converted to a sorted [`Value`] tree first) with a newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let tree = serde_json::to_value(value).map_err(|e| CliError::Config(format!("unserialisable report: {e}")))?;
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
    tree.serialize(&mut ser).map_err(|e| CliError::Config(format!("unserialisable report: {e}")))?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

pub fn canonicalize(text: &str) -> Result<String, CliError> {
    let tree: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed report: {e}")))?;
    to_canonical_json(&tree)
}

pub const SWEEP_HEADER: [&str; 5] = ["p", "lhs", "rhs", "ratio", "holds"];

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| CliError::Config(format!("cannot write csv: {e}"));
    writer.write_record(SWEEP_HEADER).map_err(csv_err)?;
    for row in rows {
        writer
            .write_record([
                float17(row.p),
                float17(row.lhs),
                float17(row.rhs),
                float17(row.ratio),
                row.holds.to_string(),
            ])
            .map_err(csv_err)?;
    }
    let bytes = writer.into_inner().map_err(|e| CliError::Output(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv of ASCII fields is UTF-8"))
}
