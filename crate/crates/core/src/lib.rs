pub mod error;
pub mod fields;
pub mod divisor;
pub mod geometry;
pub mod sieve;
pub mod splitting;

pub use error::{Error, Result};
