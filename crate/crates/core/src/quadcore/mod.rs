//! Foundational numeric kernels: the Gamma function, Gauss-Jacobi rules and
//! adaptive integration of smooth and endpoint-singular integrands.

mod adaptive;
mod gamma;
mod jacobi;

pub use adaptive::{integrate, integrate_singular, SingularEnd, MAX_SUBDIVISIONS};
pub use gamma::gamma;
pub use jacobi::{cached_rule, gauss_jacobi, gauss_legendre, jacobi_mass, QuadratureRule};

use thiserror::Error;

use crate::real::Real;

/// Default absolute/relative tolerance of the adaptive drivers.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Result of a numerical integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralEstimate<T> {
    pub value: T,
    pub abs_error_estimate: T,
    pub subdivisions: usize,
}

impl<T: Real> IntegralEstimate<T> {
    pub(crate) fn new(value: T, abs_error_estimate: T, subdivisions: usize) -> Self {
        Self { value, abs_error_estimate: abs_error_estimate.abs(), subdivisions: subdivisions.max(1) }
    }

    /// Multiplies value and error estimate by `factor`.
    pub fn scaled(self, factor: T) -> Self {
        Self {
            value: self.value * factor,
            abs_error_estimate: self.abs_error_estimate * factor.abs(),
            subdivisions: self.subdivisions,
        }
    }

    /// Sum of two estimates; errors add.
    pub fn plus(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            subdivisions: self.subdivisions + other.subdivisions,
        }
    }

    pub fn minus(self, other: Self) -> Self {
        self.plus(other.scaled(-T::one()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError<T: Real> {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("root finding for Jacobi node {index} of {order} did not converge")]
    RootFinding { order: usize, index: usize },
    #[error("adaptive integration did not converge (best value {}, error estimate {})", .best.value, .best.abs_error_estimate)]
    NonConvergence { best: IntegralEstimate<T> },
    #[error("integrand is not finite at {at}")]
    NonFinite { at: T },
}

impl<T: Real> QuadError<T> {
    /// True for the failures that signal a divergent or non-integrable
    /// integrand rather than bad arguments.
    pub fn is_divergence(&self) -> bool {
        matches!(self, QuadError::NonConvergence { .. } | QuadError::NonFinite { .. })
    }
}
