//! Exact symbolic engine for κ-Minkowski realizations.

pub mod algebra;
pub mod consistency;
pub mod error;
pub mod frontend;
pub mod integrals;
pub mod hopf;
pub mod momentum_maps;
pub mod realizations;
pub mod report;
pub mod star;
pub mod weyl;

pub use error::{KappaError, Result};
