//! File formats, exporters and the command-line tool for `hypernest-core`.

#![forbid(unsafe_code)]

pub mod chemdoc;
pub mod cli;
pub mod exportio;

pub use hypernest_core as core;
