//! File formats, canonical reports and the `a1tk` command line on top of
//! [`a1tk_core`].

pub mod cli;
pub mod error;
pub mod format;
pub mod report;

pub use error::{CliError, Outcome};
pub use format::{parse_weight, read_weight, write_weight, WeightFile};
