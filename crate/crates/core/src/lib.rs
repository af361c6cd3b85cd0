//! Exact and certified-numeric tools for the Klein arrangement of 21 lines,
//! the Grünbaum–Rigby configuration and their derived line and conic
//! configurations.

pub mod error;
pub mod mp;
pub mod numfield;
pub mod rational;
pub mod scalar;
pub mod upoly;

pub use error::{Error, Result};
pub mod invariants;
pub mod polyalg;
pub mod projplane;
pub mod arrangement;
pub mod incidence;
pub mod models;
pub mod realize;
