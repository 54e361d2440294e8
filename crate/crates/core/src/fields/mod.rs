//! Exact arithmetic in F_p and F_{p^k}, plus univariate polynomials over them.

pub mod fq;
pub mod intpoly;
pub mod poly;
pub mod prime;

pub use fq::{build_extension, ExtensionField, Fe, FieldTower, MAX_EXT_DEGREE, MAX_PUBLIC_DEGREE};
pub use intpoly::{factor_degree_profile, DegreeProfile, UnivariatePolynomial};
pub use poly::Poly;
pub use prime::{is_prime, legendre_symbol, PrimeField};
