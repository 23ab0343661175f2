//! Input schemas, report formats and verb dispatch for the `hmcoh` binary.

pub mod args;
pub mod report;
pub mod run;
pub mod schema;
