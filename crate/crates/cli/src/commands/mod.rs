use serde_json::Value;

use crate::status::ExitStatus;

pub mod geometry;
pub mod lineq;
pub mod sieve;
pub mod splitting;

/// A finished report: the JSON document, its text rendering and the exit status.
pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: ExitStatus,
}

pub fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}
