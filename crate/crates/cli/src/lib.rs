//! Command line front end: a parser for ring specs, series and derivations,
//! subcommands over the kernel, and text or JSON reports.

pub mod commands;
pub mod parse;
pub mod report;

pub use commands::{run, Cli, Outcome};
