//! Exact symbolic calculus for Lie algebroids carrying Nambu structures.
//!
//! Coefficients live in [`coeffring`]; graded objects in [`exterior`]; the
//! algebroid operations (bracket, differential, Lie derivative, Schouten
//! bracket) in [`algebroid`]. [`nambu`] and [`modular`] hold the Nambu-specific
//! checks and the modular multisection, and [`complexes`] computes exact
//! cohomology on weight strata.

pub mod algebroid;
pub mod coeffring;
pub mod complexes;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod modular;
pub mod nambu;
pub mod report;

pub use error::{Error, Result};
