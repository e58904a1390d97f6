use std::fmt;
use std::sync::Arc;

use super::HfamError;
use crate::real::{lit, Real};

type Eval<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

#[derive(Clone)]
pub enum HKind<T> {
    Identity,
    Constant(T),
    Power(T),
    Reciprocal,
    Custom { name: String, eval: Eval<T> },
}

impl<T: fmt::Debug> fmt::Debug for HKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HKind::Identity => write!(f, "Identity"),
            HKind::Constant(c) => write!(f, "Constant({c:?})"),
            HKind::Power(s) => write!(f, "Power({s:?})"),
            HKind::Reciprocal => write!(f, "Reciprocal"),
            HKind::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// Whether `∫_0^1 h^q` is finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrability {
    Integrable,
    Divergent,
    Unknown,
}

/// Positive kernel `h` on `(0, 1)` from the h-convexity inequality.
#[derive(Clone, Debug)]
pub struct HFunction<T> {
    kind: HKind<T>,
}

impl<T: Real> HFunction<T> {
    pub fn identity() -> Self {
        Self { kind: HKind::Identity }
    }

    pub fn constant(c: T) -> Result<Self, HfamError<T>> {
        if c > T::zero() && c.is_finite() {
            Ok(Self { kind: HKind::Constant(c) })
        } else {
            Err(HfamError::Invalid(format!("constant h must be positive, got {c}")))
        }
    }

    /// `h(t) = t^s`, `s > 0`. The s-convex (second sense) range is `(0, 1]`.
    pub fn power(s: T) -> Result<Self, HfamError<T>> {
        if s > T::zero() && s.is_finite() {
            Ok(Self { kind: HKind::Power(s) })
        } else {
            Err(HfamError::Invalid(format!("power h needs s > 0, got {s}")))
        }
    }

    pub fn square() -> Self {
        Self { kind: HKind::Power(lit(2.0)) }
    }

    pub fn reciprocal() -> Self {
        Self { kind: HKind::Reciprocal }
    }

    pub fn custom(name: impl Into<String>, eval: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self { kind: HKind::Custom { name: name.into(), eval: Arc::new(eval) } }
    }

    pub fn kind(&self) -> &HKind<T> {
        &self.kind
    }

    pub fn eval(&self, t: T) -> T {
        match &self.kind {
            HKind::Identity => t,
            HKind::Constant(c) => *c,
            HKind::Power(s) => t.powf(*s),
            HKind::Reciprocal => t.recip(),
            HKind::Custom { eval, .. } => eval(t),
        }
    }

    /// True when `s` lies in the s-convexity range `(0, 1]`.
    pub fn in_s_convex_range(&self) -> bool {
        match self.kind {
            HKind::Power(s) => s <= T::one(),
            HKind::Identity => true,
            _ => false,
        }
    }

    /// Analytic integrability of `h^q` on `(0, 1)` for `q >= 1`.
    pub fn q_integrability(&self, q: T) -> Integrability {
        match &self.kind {
            HKind::Identity | HKind::Constant(_) | HKind::Power(_) => Integrability::Integrable,
            HKind::Reciprocal if q >= T::one() => Integrability::Divergent,
            HKind::Reciprocal => Integrability::Integrable,
            HKind::Custom { .. } => Integrability::Unknown,
        }
    }

    /// Exponent `e` with `h(t) = t^e g(t)` and `g` smooth near zero, when
    /// known. The moment integrals fold `t^e` into a Jacobi weight.
    pub(crate) fn endpoint_exponent(&self) -> Option<T> {
        match self.kind {
            HKind::Identity => Some(T::one()),
            HKind::Constant(_) => Some(T::zero()),
            HKind::Power(s) => Some(s),
            HKind::Reciprocal => Some(-T::one()),
            HKind::Custom { .. } => None,
        }
    }

    /// The smooth factor `g(t) = h(t) / t^e` paired with
    /// [`endpoint_exponent`](Self::endpoint_exponent).
    pub(crate) fn endpoint_smooth_factor(&self, _t: T) -> T {
        match self.kind {
            HKind::Constant(c) => c,
            _ => T::one(),
        }
    }

    /// Compact text form, as accepted by the command line (`h=pow:0.5`).
    pub fn spec_text(&self) -> String {
        match &self.kind {
            HKind::Identity => "id".into(),
            HKind::Constant(c) => format!("const:{c}"),
            HKind::Power(s) if *s == lit(2.0) => "sq".into(),
            HKind::Power(s) => format!("pow:{s}"),
            HKind::Reciprocal => "recip".into(),
            HKind::Custom { name, .. } => format!("custom:{name}"),
        }
    }

    pub fn description(&self) -> String {
        match &self.kind {
            HKind::Identity => "h(t) = t".into(),
            HKind::Constant(c) => format!("h(t) = {c}"),
            HKind::Power(s) => format!("h(t) = t^{s}"),
            HKind::Reciprocal => "h(t) = 1/t".into(),
            HKind::Custom { name, .. } => format!("h = {name}"),
        }
    }
}

impl<T: Real> fmt::Display for HFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_text())
    }
}
