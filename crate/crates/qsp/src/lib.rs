//! File formats, verification suites and the command line interface for
//! `qsp-core`.

pub mod cli;
pub mod input;
pub mod io;
pub mod latex;
pub mod soundness;
pub mod suites;
