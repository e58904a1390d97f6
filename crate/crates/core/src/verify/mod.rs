//! One verifier per inequality: each checks the hypotheses numerically,
//! computes every side and reports slacks with a status.
//!
//! Verifiers work in `f64`, the precision of the serialized reports.

mod reductions;
mod report;
mod theorems;

pub use reductions::{corollary_constants, verify_reductions, CorollaryConstants};
pub use report::{
    float, opt_float, InequalityReport, NamedValue, Reason, ReasonCode, ReportInputs, ReportWitness, Status, TheoremId,
};
pub use theorems::{
    lemma1_residual, pointwise_sum_defect, trapezoid_constant, verify_frac_hadamard_convex, verify_hadamard_classical,
    verify_sarikaya_h, verify_thm_main, verify_thm_superadd, verify_thm_trapezoid,
};

use thiserror::Error;

use crate::fracint::{FractionalOrder, Interval};
use crate::hfam::{FunctionSpec, HFunction, HfamError};
use crate::quadcore::QuadError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Quad(#[from] QuadError<f64>),
    #[error(transparent)]
    Hfam(#[from] HfamError<f64>),
}

/// Hölder conjugate exponents `1/p + 1/q = 1`, `p > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentPair {
    p: f64,
    q: f64,
}

impl ExponentPair {
    pub fn new(p: f64) -> Result<Self, VerifyError> {
        if p > 1.0 && p.is_finite() {
            Ok(Self { p, q: p / (p - 1.0) })
        } else {
            Err(VerifyError::Invalid(format!("Hölder exponent p must be finite and > 1, got {p}")))
        }
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Slack tolerance, added to the propagated quadrature error.
    pub tol: f64,
    /// Target tolerance of every integral.
    pub quad_tol: f64,
    /// Tolerance of the class checks.
    pub class_tol: f64,
    pub grid_n: usize,
    pub seed: u64,
    /// Compute sides even when a hypothesis fails; status stays
    /// `inapplicable`.
    pub force: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            quad_tol: 1e-12,
            class_tol: crate::hfam::DEFAULT_CLASS_TOL,
            grid_n: 24,
            seed: 0,
            force: false,
        }
    }
}

/// A fully specified verifier call.
#[derive(Debug, Clone)]
pub struct Instance {
    pub theorem: TheoremId,
    pub f: FunctionSpec<f64>,
    pub h: Option<HFunction<f64>>,
    pub interval: Interval<f64>,
    pub alpha: Option<f64>,
    pub p: Option<f64>,
}

impl Instance {
    pub fn needs_h(theorem: TheoremId) -> bool {
        matches!(theorem, TheoremId::SarikayaH | TheoremId::ThmMain | TheoremId::ThmSuperadd | TheoremId::ThmTrapezoid)
    }

    pub fn needs_alpha(theorem: TheoremId) -> bool {
        matches!(
            theorem,
            TheoremId::FracHadamardConvex
                | TheoremId::Lemma1Identity
                | TheoremId::ThmMain
                | TheoremId::ThmSuperadd
                | TheoremId::ThmTrapezoid
        )
    }

    pub fn needs_p(theorem: TheoremId) -> bool {
        matches!(theorem, TheoremId::ThmMain | TheoremId::ThmTrapezoid)
    }

    pub fn run(&self, opts: &VerifyOptions) -> Result<InequalityReport, VerifyError> {
        let missing = |what: &str| VerifyError::Invalid(format!("{} needs {what}", self.theorem));
        let h = || self.h.as_ref().ok_or_else(|| missing("an h-function"));
        let alpha = || {
            let a = self.alpha.ok_or_else(|| missing("alpha"))?;
            FractionalOrder::new(a).map_err(VerifyError::from)
        };
        let pq = || ExponentPair::new(self.p.ok_or_else(|| missing("p"))?);
        let (f, i) = (&self.f, self.interval);
        match self.theorem {
            TheoremId::HadamardClassical => verify_hadamard_classical(f, i, opts),
            TheoremId::SarikayaH => verify_sarikaya_h(f, h()?, i, opts),
            TheoremId::FracHadamardConvex => verify_frac_hadamard_convex(f, i, alpha()?, opts),
            TheoremId::Lemma1Identity => lemma1_residual(f, i, alpha()?, opts),
            TheoremId::ThmMain => verify_thm_main(f, h()?, i, alpha()?, pq()?, opts),
            TheoremId::ThmSuperadd => verify_thm_superadd(f, h()?, i, alpha()?, opts),
            TheoremId::ThmTrapezoid => verify_thm_trapezoid(f, h()?, i, alpha()?, pq()?, opts),
            TheoremId::Reduction => Err(VerifyError::Invalid("reductions run through verify_reductions".into())),
        }
    }
}
