//! Command-line surface for `lattica`: argument parsing, output formats, the
//! golden corpus and the verification driver.

pub mod checks;
pub mod cli;
pub mod corpus;
pub mod emit;
