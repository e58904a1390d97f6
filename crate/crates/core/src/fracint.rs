//! Riemann-Liouville fractional integral operators and the normalized
//! left/right pair that appears in Hermite-Hadamard type bounds.

use serde::{Deserialize, Serialize};

use crate::quadcore::{gamma, integrate_singular, IntegralEstimate, QuadError, SingularEnd};
use crate::real::{lit, Real};

/// Order of a fractional integral; always strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder<T>(T);

impl<T: Real> FractionalOrder<T> {
    pub fn new(alpha: T) -> Result<Self, QuadError<T>> {
        if alpha > T::zero() && alpha.is_finite() {
            Ok(Self(alpha))
        } else {
            Err(QuadError::Domain(format!("fractional order must be > 0, got {alpha}")))
        }
    }

    pub fn get(self) -> T {
        self.0
    }
}

/// Closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    a: T,
    b: T,
}

impl<T: Real> Interval<T> {
    pub fn new(a: T, b: T) -> Result<Self, QuadError<T>> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Self { a, b })
        } else {
            Err(QuadError::Domain(format!("interval needs finite a < b, got [{a}, {b}]")))
        }
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn len(&self) -> T {
        self.b - self.a
    }

    pub fn midpoint(&self) -> T {
        lit::<T>(0.5) * (self.a + self.b)
    }

    /// Point `a + s (b - a)` for `s` in `[0, 1]`.
    pub fn lerp(&self, s: T) -> T {
        self.a + s * (self.b - self.a)
    }

    pub fn contains(&self, other: &Interval<T>) -> bool {
        self.a <= other.a && other.b <= self.b
    }

    /// Reflection `t -> a + b - t`.
    pub fn reflect(&self, t: T) -> T {
        self.a + self.b - t
    }
}

/// Normalizations of `J_{a+}^α f(b) + J_{b-}^α f(a)` used by the bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `Γ(α) / (b - a)^α`
    GammaOverLen,
    /// `Γ(α + 1) / (2 (b - a)^α)`
    HalfGamma1OverLen,
}

/// `∫_a^b (b - t)^{α-1} f(t) dt`, the left-sided integral without `1/Γ(α)`.
fn kernel_left<T: Real, F: Fn(T) -> T>(
    f: F,
    interval: Interval<T>,
    alpha: FractionalOrder<T>,
    tol: T,
) -> Result<IntegralEstimate<T>, QuadError<T>> {
    integrate_singular(f, interval.a, interval.b, alpha.0 - T::one(), SingularEnd::Right, tol)
}

/// `∫_a^b (t - a)^{α-1} f(t) dt`.
fn kernel_right<T: Real, F: Fn(T) -> T>(
    f: F,
    interval: Interval<T>,
    alpha: FractionalOrder<T>,
    tol: T,
) -> Result<IntegralEstimate<T>, QuadError<T>> {
    integrate_singular(f, interval.a, interval.b, alpha.0 - T::one(), SingularEnd::Left, tol)
}

/// Left-sided Riemann-Liouville integral `J_{a+}^α f` evaluated at `x = b`.
pub fn rl_left<T: Real, F: Fn(T) -> T>(
    f: F,
    interval: Interval<T>,
    alpha: FractionalOrder<T>,
    tol: T,
) -> Result<IntegralEstimate<T>, QuadError<T>> {
    let g = gamma(alpha.0)?;
    Ok(kernel_left(f, interval, alpha, tol)?.scaled(g.recip()))
}

/// Right-sided Riemann-Liouville integral `J_{b-}^α f` evaluated at `x = a`.
pub fn rl_right<T: Real, F: Fn(T) -> T>(
    f: F,
    interval: Interval<T>,
    alpha: FractionalOrder<T>,
    tol: T,
) -> Result<IntegralEstimate<T>, QuadError<T>> {
    let g = gamma(alpha.0)?;
    Ok(kernel_right(f, interval, alpha, tol)?.scaled(g.recip()))
}

/// Order-zero operator: `J^0 f(x) = f(x)`.
pub fn rl_identity<T: Real, F: Fn(T) -> T>(f: F, x: T) -> T {
    f(x)
}

/// `J_{a+}^α f(b) + J_{b-}^α f(a)` under the chosen normalization.
///
/// The Gamma factors cancel against the normalization, so the kernels are
/// combined directly: `GammaOverLen` gives `(K_l + K_r) / (b-a)^α` and
/// `HalfGamma1OverLen` gives `α (K_l + K_r) / (2 (b-a)^α)`.
pub fn rl_pair<T: Real, F: Fn(T) -> T>(
    f: F,
    interval: Interval<T>,
    alpha: FractionalOrder<T>,
    normalization: Normalization,
    tol: T,
) -> Result<IntegralEstimate<T>, QuadError<T>> {
    let left = kernel_left(&f, interval, alpha, tol)?;
    let right = kernel_right(&f, interval, alpha, tol)?;
    let base = interval.len().powf(alpha.0).recip();
    let factor = match normalization {
        Normalization::GammaOverLen => base,
        Normalization::HalfGamma1OverLen => base * alpha.0 * lit(0.5),
    };
    Ok(left.plus(right).scaled(factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadcore::integrate;

    const TOL: f64 = 1e-12;

    fn unit() -> Interval<f64> {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn order(a: f64) -> FractionalOrder<f64> {
        FractionalOrder::new(a).unwrap()
    }

    #[test]
    fn constant_function() {
        // J_{a+}^α 1 (b) = (b-a)^α / Γ(α+1)
        let v = rl_left(|_| 1.0, unit(), order(0.5), TOL).unwrap().value;
        assert!((v - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-12);
        for alpha in [0.3, 0.5, 1.0, 2.5] {
            let want = 1.0 / gamma(alpha + 1.0).unwrap();
            let v = rl_right(|_| 1.0, unit(), order(alpha), TOL).unwrap().value;
            assert!((v - want).abs() < 1e-12 * want.max(1.0), "alpha {alpha}");
        }
    }

    #[test]
    fn alpha_one_is_plain_integral() {
        let v = rl_left(|t| t, unit(), order(1.0), TOL).unwrap().value;
        assert!((v - 0.5).abs() < 1e-14);
        let v = rl_right(|t| t, unit(), order(1.0), TOL).unwrap().value;
        assert!((v - 0.5).abs() < 1e-14);
    }

    #[test]
    fn monomial_transform() {
        // Γ(3)/Γ(3.5)
        let v = rl_left(|t: f64| t * t, unit(), order(0.5), TOL).unwrap().value;
        let want = 2.0 / gamma(3.5).unwrap();
        assert!((v - want).abs() < 1e-12, "{v} vs {want}");
        assert!((want - 0.6018).abs() < 1e-4);
    }

    #[test]
    fn reflection_law() {
        let i = Interval::new(0.3, 1.7).unwrap();
        let alpha = order(0.7);
        let right = rl_right(|t: f64| t.exp(), i, alpha, TOL).unwrap().value;
        let left = rl_left(|t: f64| i.reflect(t).exp(), i, alpha, TOL).unwrap().value;
        assert!((right - left).abs() < 1e-10);
    }

    #[test]
    fn pair_normalizations() {
        for (a, b) in [(0.0, 1.0), (1.0, 3.0), (-2.0, 0.5)] {
            let i = Interval::new(a, b).unwrap();
            for alpha in [0.4, 1.0, 2.2] {
                let ones = rl_pair(|_| 1.0, i, order(alpha), Normalization::HalfGamma1OverLen, TOL).unwrap();
                assert!((ones.value - 1.0).abs() < 1e-12);
                let lin = rl_pair(|t| t, i, order(alpha), Normalization::HalfGamma1OverLen, TOL).unwrap();
                assert!((lin.value - 0.5 * (a + b)).abs() < 1e-12);
                let g = rl_pair(|t: f64| t.cos(), i, order(alpha), Normalization::GammaOverLen, TOL).unwrap();
                let h = rl_pair(|t: f64| t.cos(), i, order(alpha), Normalization::HalfGamma1OverLen, TOL).unwrap();
                assert!((g.value / h.value - 2.0 / alpha).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pair_definition_matches_one_sided_operators() {
        let i = Interval::new(0.5, 2.0).unwrap();
        let alpha = order(0.6);
        let f = |t: f64| t * t.sin() + 2.0;
        let l = rl_left(f, i, alpha, TOL).unwrap().value;
        let r = rl_right(f, i, alpha, TOL).unwrap().value;
        let want = gamma(1.6).unwrap() / (2.0 * 1.5f64.powf(0.6)) * (l + r);
        let got = rl_pair(f, i, alpha, Normalization::HalfGamma1OverLen, TOL).unwrap().value;
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn identity_and_validation() {
        assert_eq!(rl_identity(|t: f64| 3.0 * t, 2.0), 6.0);
        assert!(FractionalOrder::new(0.0f64).is_err());
        assert!(FractionalOrder::new(-1.0f64).is_err());
        assert!(Interval::new(1.0f64, 1.0).is_err());
        assert!(Interval::new(2.0f64, 1.0).is_err());
        // negative left endpoints are accepted by the raw operators
        let v = rl_left(|_| 1.0, Interval::new(-1.0, 0.0).unwrap(), order(1.0), TOL).unwrap().value;
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn single_precision_operator() {
        let i = Interval::new(0.0f32, 1.0).unwrap();
        let v = rl_left(|_| 1.0f32, i, FractionalOrder::new(0.5f32).unwrap(), 1e-5).unwrap().value;
        assert!((v - std::f32::consts::FRAC_2_SQRT_PI).abs() < 1e-4);
    }

    #[test]
    fn alpha_one_plain_integral_general() {
        let i = Interval::new(-0.4, 2.3).unwrap();
        let f = |t: f64| (2.0 * t).cos() + t.powi(3);
        let plain = integrate(f, -0.4, 2.3, TOL).unwrap().value;
        let frac = rl_left(f, i, order(1.0), TOL).unwrap().value;
        assert!((plain - frac).abs() < 1e-12);
    }
}
