//! Exact toolkit for Hadamard products, powers and ranks of projective varieties.

pub mod conciseness;
pub mod error;
pub mod exactalg;
pub mod groebner;
pub mod hadamard;
pub mod numdim;
pub mod rankengine;
pub mod reproduce;
pub mod zoo;

pub use error::{Error, Result};
