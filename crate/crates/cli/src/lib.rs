//! Library surface of the `emdk` command line: the scenario and report
//! schemas and the task runner, reusable from integration tests.

#![allow(clippy::needless_range_loop)]

pub mod report;
pub mod runner;
pub mod scenario;
