//! Exact decision procedure for realizability of tropical curves inside a
//! tropical plane, together with the plane-curve tooling it needs
//! (push-forwards, Newton polytopes, marked regular subdivisions) and
//! closed-form criteria for curves in the tropical plane of `x0+x1+x2+x3`.

pub mod error;
pub mod geometry;
pub mod l32;
pub mod linalg;
pub mod rational;

pub use error::{Error, Result};
pub mod matroid;
pub mod newton;
pub mod projection;
pub mod puiseux;
pub mod realizability;
