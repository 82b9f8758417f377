//! Command-line front end: spec files, analysis commands, reports and the
//! verification suite.

pub mod commands;
pub mod report;
pub mod spec;
pub mod suite;
