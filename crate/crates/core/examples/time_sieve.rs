//! cargo run --release --example time_sieve -- CURVE.json P [WORKERS]

use lonesieve::sieve::{compute_wp, LonelyCertificates, MarkedCurveData};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let data = MarkedCurveData::from_str(&std::fs::read_to_string(&args[1]).unwrap()).unwrap();
    let p: u64 = args[2].parse().unwrap();
    let workers: usize = args.get(3).and_then(|s| s.parse().ok()).unwrap_or(1);
    let r = compute_wp(&data, p, &LonelyCertificates::default(), workers).unwrap();
    println!("{}", serde_json::to_string(&r).unwrap());
}
