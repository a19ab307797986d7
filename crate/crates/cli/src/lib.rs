//! Library surface of the command-line tool, split out so integration
//! tests can drive the commands directly.

pub mod commands;
pub mod ingest;
pub mod report;
pub mod simulate;
