//! The Atkin-Lehner sieve: reductions of known divisors, W_p per prime, and the verdict.

pub mod data;
pub mod doom;
pub mod engine;
pub mod quad;

pub use data::{CurveSpec, KnownDivisor, KnownShape, LonelyCertificates, MarkedCurveData};
pub use doom::{doom_check, fixed_points, fixed_points_mod_p, DoomCheck, FixedPointScan};
pub use engine::{
    build_hp_sp, compute_wp, intersect_and_verdict, reduce_known_divisors, PrimeContext, SieveReport, Verdict,
};
