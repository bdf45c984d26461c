//! Text format, JSON reports and command line driver for `typoid-core`.

pub mod cli;
pub mod dsl;
pub mod naming;
pub mod report;
