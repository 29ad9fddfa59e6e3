//! Divided differences, Taylor jets and numerical checks of two-sided bounds
//! for completely monotone functions on `(0, ∞)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`jet`]: truncated Taylor arithmetic for arbitrary-order derivatives.
//! * [`divdiff`]: node sets, divided differences by two independent routes,
//!   and the product-inequality weights.
//! * [`catalog`]: the function families, their classes and endpoint limits.
//! * [`verifier`]: sign checks, the divided-difference sandwich, mean-value
//!   witnesses, the product inequality and seeded trial campaigns.

pub mod catalog;
pub mod divdiff;
pub mod extended;
pub mod jet;
pub mod summation;
pub mod verifier;

pub use catalog::{CatalogFunction, CmClass, FunctionId, Params};
pub use divdiff::{
    dd_lagrange, dd_newton, weights_a, DividedDifference, Method, NodeError, NodeSet,
};
pub use extended::ExtendedReal;
pub use jet::{Jet, JetError, DEFAULT_MAX_ORDER};
