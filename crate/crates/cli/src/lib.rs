//! File formats and reports behind the `glg` command.

pub mod format;
pub mod report;
