//! File format, reports and commands behind the `tightcover` binary.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{run, Cli, CliError, Command, Outcome, View};
pub use format::{parse, ParseError, StructureFile};
