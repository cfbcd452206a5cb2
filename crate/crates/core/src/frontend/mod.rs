//! Expression parser and the `kappa` command-line interface.

pub mod expr;
pub mod cli;
pub mod suites;
