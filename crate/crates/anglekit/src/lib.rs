//! Input formats, reports, randomized sweeps and the `anglekit` command line
//! on top of `anglekit-core`.

pub mod cli;
pub mod io;
pub mod regressions;
pub mod report;
pub mod sweep;
