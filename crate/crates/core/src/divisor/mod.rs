//! Effective divisors on plane curves over F_p and linear equivalence between them.

pub mod effective;
pub mod linalg;
pub mod lineq;
pub mod oracle;
pub mod sym2;
pub mod torsion;

pub use effective::EffectiveDivisor;
pub use lineq::{lin_equiv, reduce, EquivalenceCertificate};
pub use oracle::{brute_force_equiv, FormCatalog, OracleAnswer};
pub use sym2::sym2_enumerate;
pub use torsion::{class_match, class_match_direct, TorsionModel, TorsionTable};
