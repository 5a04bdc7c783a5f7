//! Command-line frontend: group files, the builtin corpus, the table cache and report rendering.

pub mod cache;
pub mod commands;
pub mod corpus;
pub mod report;

pub use commands::run_command;
