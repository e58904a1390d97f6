use super::{HFunction, HfamError};
use crate::fracint::FractionalOrder;
use crate::quadcore::{integrate, integrate_singular, IntegralEstimate, QuadError, SingularEnd};
use crate::real::{lit, Real};

/// A moment integral, or the fact that it diverges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment<T> {
    Converged(IntegralEstimate<T>),
    Divergent,
}

impl<T: Real> Moment<T> {
    pub fn value(&self) -> Option<T> {
        match self {
            Moment::Converged(e) => Some(e.value),
            Moment::Divergent => None,
        }
    }

    pub fn error(&self) -> Option<T> {
        match self {
            Moment::Converged(e) => Some(e.abs_error_estimate),
            Moment::Divergent => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, Moment::Divergent)
    }

    fn sum(parts: &[Moment<T>]) -> Moment<T> {
        let mut acc: Option<IntegralEstimate<T>> = None;
        for p in parts {
            match p {
                Moment::Divergent => return Moment::Divergent,
                Moment::Converged(e) => acc = Some(acc.map_or(*e, |a| a.plus(*e))),
            }
        }
        acc.map_or(Moment::Divergent, Moment::Converged)
    }
}

/// The h-dependent integrals consumed by the fractional bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HMoments<T> {
    /// `∫_0^1 t^(α-1) [h(t) + h(1-t)] dt`
    pub m_alpha: Moment<T>,
    /// `∫_0^1 h^q`
    pub mq_full: Moment<T>,
    /// `∫_0^(1/2) h^q`
    pub mq_lo: Moment<T>,
    /// `∫_(1/2)^1 h^q`
    pub mq_hi: Moment<T>,
}

impl<T: Real> HMoments<T> {
    /// Largest error estimate among the converged components.
    pub fn max_error(&self) -> T {
        [self.m_alpha, self.mq_full, self.mq_lo, self.mq_hi].iter().filter_map(Moment::error).fold(T::zero(), T::max)
    }
}

fn classify<T: Real>(r: Result<IntegralEstimate<T>, QuadError<T>>) -> Result<Moment<T>, HfamError<T>> {
    match r {
        Ok(e) if e.value.is_finite() => Ok(Moment::Converged(e)),
        Ok(_) => Ok(Moment::Divergent),
        Err(e) if e.is_divergence() => Ok(Moment::Divergent),
        Err(e) => Err(e.into()),
    }
}

/// `∫ |end - t|^mu g(t) dt`, divergent outright when `mu <= -1`.
fn folded<T: Real>(
    g: impl Fn(T) -> T,
    lo: T,
    hi: T,
    mu: T,
    end: SingularEnd,
    tol: T,
) -> Result<Moment<T>, HfamError<T>> {
    if mu <= -T::one() {
        return Ok(Moment::Divergent);
    }
    classify(integrate_singular(g, lo, hi, mu, end, tol))
}

/// Computes the h-moments. Known endpoint exponents `h(t) = t^e g(t)` are
/// folded into Gauss-Jacobi weights; divergence is data, not an error.
pub fn h_moments<T: Real>(
    h: &HFunction<T>,
    alpha: FractionalOrder<T>,
    q: T,
    tol: T,
) -> Result<HMoments<T>, HfamError<T>> {
    if !(q >= T::one()) || !q.is_finite() {
        return Err(HfamError::Invalid(format!("q must be at least 1, got {q}")));
    }
    let zero = T::zero();
    let one = T::one();
    let half: T = lit(0.5);
    let am1 = alpha.get() - one;
    let hq = |t: T| h.eval(t).powf(q);

    let m_alpha = match h.endpoint_exponent() {
        Some(e) => {
            let g = |t: T| h.endpoint_smooth_factor(t);
            Moment::sum(&[
                folded(g, zero, half, am1 + e, SingularEnd::Left, tol)?,
                folded(|t| h.eval(one - t), zero, half, am1, SingularEnd::Left, tol)?,
                classify(integrate(|t: T| t.powf(am1) * h.eval(t), half, one, tol))?,
                folded(|t: T| t.powf(am1) * g(one - t), half, one, e, SingularEnd::Right, tol)?,
            ])
        }
        None => Moment::sum(&[
            folded(|t| h.eval(t) + h.eval(one - t), zero, half, am1, SingularEnd::Left, tol)?,
            classify(integrate(|t: T| t.powf(am1) * (h.eval(t) + h.eval(one - t)), half, one, tol))?,
        ]),
    };

    let (mq_full, mq_lo) = match h.endpoint_exponent() {
        Some(e) => {
            let gq = |t: T| h.endpoint_smooth_factor(t).powf(q);
            (
                folded(gq, zero, one, e * q, SingularEnd::Left, tol)?,
                folded(gq, zero, half, e * q, SingularEnd::Left, tol)?,
            )
        }
        None => (classify(integrate(hq, zero, one, tol))?, classify(integrate(hq, zero, half, tol))?),
    };
    let mq_hi = classify(integrate(hq, half, one, tol))?;

    Ok(HMoments { m_alpha, mq_full, mq_lo, mq_hi })
}
