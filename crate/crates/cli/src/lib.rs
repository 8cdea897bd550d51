//! Command-line front end for `hyperforest`.
//!
//! Exit status of the binary: 0 when every requested equality holds, 1 when
//! one fails, 2 when the command could not run at all.

pub mod commands;
pub mod input;
pub mod report;
