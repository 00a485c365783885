//! High-precision q-series, continued fractions and the Bauer-Muir
//! transformation, with a registry of q-continued-fraction identities and a
//! harness that checks them numerically.

pub mod bauermuir;
pub mod catalog;
pub mod cfengine;
pub mod error;
pub mod harness;
pub mod qseries;

pub use error::{QcfError, Result};
