//! Plane curves over finite fields: forms, points, places, branches and intersections.

pub mod branch;
pub mod curve;
pub mod enumerate;
pub mod form;
pub mod intersect;
pub mod points;
pub mod rational;
pub mod series;

pub use branch::{local_expansion, BranchExpansion};
pub use curve::{is_smooth, smoothness, PlaneCurve, Smoothness};
pub use form::{Form, Mat3, Monomial};
pub use intersect::intersection_divisor;
pub use points::{Place, ProjectivePoint};
pub use enumerate::{enumerate_points, place_image, places_up_to_degree, validate_involution, InvolutionScalars};
pub use rational::{reduce_mod_p, QForm, QMat3};
