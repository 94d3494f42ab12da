//! Computer algebra for commutative differential graded algebras over ℚ.

pub mod cdga;
pub mod cli;
pub mod derivation;
pub mod dsl;
pub mod error;
pub mod graded;
pub mod harrison;
pub mod mapping;
pub mod report;

pub use error::{Error, Result};
