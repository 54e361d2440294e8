//! Shared fixtures for the benchmarks.

use lonesieve::sieve::MarkedCurveData;

pub fn curve_data(name: &str) -> MarkedCurveData {
    let path = format!("{}/../../data/curves/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    MarkedCurveData::from_str(&text).unwrap()
}
