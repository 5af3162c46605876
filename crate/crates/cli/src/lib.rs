//! The `elx` command line: the proof-script format, checking sessions,
//! commands and their reports.

pub mod commands;
pub mod corpus;
pub mod report;
pub mod script;
pub mod session;
