//! Std companion to `mcnoc-core`: benchmarks, file formats and the `mcnoc`
//! command-line front end.

pub mod bench;
pub mod cli;
pub mod formats;
