//! Riemann-Liouville fractional integrals and numerical certification of
//! Hermite-Hadamard type inequalities for h-convex functions.
//!
//! The numeric core is generic over the scalar type through [`Real`]; the
//! aliases below fix it to `f64`, which is what the verifiers, the search
//! layer and the command-line tool use.

// `!(x > 0.0)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod fracint;
pub mod hfam;
pub mod quadcore;
mod real;
pub mod search;
pub mod selftest;
pub mod verify;

pub use real::Real;

pub type QuadratureRule64 = quadcore::QuadratureRule<f64>;
pub type IntegralEstimate64 = quadcore::IntegralEstimate<f64>;
pub type QuadError64 = quadcore::QuadError<f64>;
pub type Interval64 = fracint::Interval<f64>;
pub type FractionalOrder64 = fracint::FractionalOrder<f64>;
pub type FunctionSpec64 = hfam::FunctionSpec<f64>;
pub type HFunction64 = hfam::HFunction<f64>;
