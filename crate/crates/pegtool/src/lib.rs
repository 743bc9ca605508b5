//! Command-line harness around `peg-core`: graph specifications, a JSONL
//! results cache and the verification suites.

pub mod cache;
pub mod cli;
pub mod parse;
pub mod suites;
