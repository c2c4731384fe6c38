//! Exact computer algebra for Horadam sequences, symbol algebras and
//! Horadam symbol elements.

pub mod error;
pub mod horadam;
pub mod hse;
pub mod identities;
pub mod rings;
pub mod symalg;
pub mod zerodiv;

pub use error::{Error, Result};
