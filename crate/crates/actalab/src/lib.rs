//! File formats and the command-line front end over `actalab-core`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod formats;
