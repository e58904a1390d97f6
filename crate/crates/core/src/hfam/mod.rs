//! h-functions, test functions, numeric class checkers and the h-moment
//! integrals shared by the inequality verifiers.

mod check;
mod function;
mod hfunction;
mod moments;
pub mod registry;

pub use check::{check_convex, check_h_convex, check_superadditive, ClassCheckReport, Verdict, Witness};
pub use function::{ClassTag, Family, FunctionSpec};
pub use hfunction::{HFunction, HKind, Integrability};
pub use moments::{h_moments, HMoments, Moment};

use thiserror::Error;

use crate::quadcore::QuadError;
use crate::real::Real;

/// Default classification tolerance.
pub const DEFAULT_CLASS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HfamError<T: Real> {
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error(transparent)]
    Quad(#[from] QuadError<T>),
}
