//! Command-line front end for `polyindex-core`: JSON documents for
//! polytopes and operators, report rendering, and the subcommands.

pub mod commands;
pub mod documents;
pub mod error;
pub mod text;
