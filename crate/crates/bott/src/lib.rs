//! File formats, reports, and the `bott` command-line tool built on
//! [`bott_core`].

pub mod cli;
pub mod json;
pub mod parse;
pub mod report;
