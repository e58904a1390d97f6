use std::fmt;
use std::sync::Arc;

use super::HfamError;
use crate::fracint::Interval;
use crate::real::{lit, Real};

type Eval<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Closed-form families of test functions.
#[derive(Clone)]
pub enum Family<T> {
    /// `x^beta`
    Power {
        beta: T,
    },
    /// `c2 x^2 + c1 x + c0`
    Quadratic {
        c2: T,
        c1: T,
        c0: T,
    },
    /// `e^x`
    Exp,
    /// `|x - center|^r`
    AbsPower {
        r: T,
        center: T,
    },
    /// Linear interpolation through `knots` (sorted by abscissa), extended
    /// linearly beyond the first and last knot.
    PiecewiseLinear {
        knots: Vec<(T, T)>,
    },
    Const {
        c: T,
    },
    Custom {
        name: String,
        eval: Eval<T>,
        deriv: Option<Eval<T>>,
    },
}

impl<T: fmt::Debug> fmt::Debug for Family<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Power { beta } => write!(f, "Power({beta:?})"),
            Family::Quadratic { c2, c1, c0 } => write!(f, "Quadratic({c2:?}, {c1:?}, {c0:?})"),
            Family::Exp => write!(f, "Exp"),
            Family::AbsPower { r, center } => write!(f, "AbsPower({r:?}, {center:?})"),
            Family::PiecewiseLinear { knots } => write!(f, "PiecewiseLinear({knots:?})"),
            Family::Const { c } => write!(f, "Const({c:?})"),
            Family::Custom { name, .. } => write!(f, "Custom({name})"),
        }
    }
}

/// Declared (claimed) class memberships. Claims are only trusted after a
/// numeric class check.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassTag<T> {
    Convex,
    SConvex(T),
    PFunction,
    GodunovaLevin,
    HConvex(String),
}

/// A test function `f` with its derivative, domain and claimed classes.
#[derive(Clone, Debug)]
pub struct FunctionSpec<T> {
    family: Family<T>,
    scale: T,
    domain: Interval<T>,
    declared_class: Vec<ClassTag<T>>,
}

impl<T: Real> FunctionSpec<T> {
    pub fn new(family: Family<T>, domain: Interval<T>) -> Result<Self, HfamError<T>> {
        if let Family::PiecewiseLinear { knots } = &family {
            if knots.len() < 2 || knots.windows(2).any(|w| !(w[0].0 < w[1].0)) {
                return Err(HfamError::Invalid(
                    "piecewise linear function needs at least two knots with increasing abscissae".into(),
                ));
            }
        }
        Ok(Self { family, scale: T::one(), domain, declared_class: Vec::new() })
    }

    pub fn power(beta: T, domain: Interval<T>) -> Result<Self, HfamError<T>> {
        Self::new(Family::Power { beta }, domain)
    }

    pub fn quadratic(c2: T, c1: T, c0: T, domain: Interval<T>) -> Result<Self, HfamError<T>> {
        Self::new(Family::Quadratic { c2, c1, c0 }, domain)
    }

    pub fn exp(domain: Interval<T>) -> Result<Self, HfamError<T>> {
        Self::new(Family::Exp, domain)
    }

    pub fn abs_power(r: T, center: T, domain: Interval<T>) -> Result<Self, HfamError<T>> {
        Self::new(Family::AbsPower { r, center }, domain)
    }

    pub fn piecewise_linear(knots: Vec<(T, T)>, domain: Interval<T>) -> Result<Self, HfamError<T>> {
        Self::new(Family::PiecewiseLinear { knots }, domain)
    }

    pub fn constant(c: T, domain: Interval<T>) -> Result<Self, HfamError<T>> {
        Self::new(Family::Const { c }, domain)
    }

    pub fn custom(
        name: impl Into<String>,
        eval: impl Fn(T) -> T + Send + Sync + 'static,
        deriv: Option<Eval<T>>,
        domain: Interval<T>,
    ) -> Result<Self, HfamError<T>> {
        Self::new(Family::Custom { name: name.into(), eval: Arc::new(eval), deriv }, domain)
    }

    pub fn with_classes(mut self, classes: Vec<ClassTag<T>>) -> Self {
        self.declared_class = classes;
        self
    }

    /// `c f` for `c > 0`.
    pub fn scaled(&self, c: T) -> Self {
        let mut out = self.clone();
        out.scale = self.scale * c;
        out
    }

    /// Same function on another domain.
    pub fn with_domain(&self, domain: Interval<T>) -> Self {
        let mut out = self.clone();
        out.domain = domain;
        out
    }

    pub fn family(&self) -> &Family<T> {
        &self.family
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    pub fn scale(&self) -> T {
        self.scale
    }

    pub fn declared_class(&self) -> &[ClassTag<T>] {
        &self.declared_class
    }

    pub fn eval(&self, x: T) -> T {
        let v = match &self.family {
            Family::Power { beta } => x.powf(*beta),
            Family::Quadratic { c2, c1, c0 } => (*c2 * x + *c1) * x + *c0,
            Family::Exp => x.exp(),
            Family::AbsPower { r, center } => (x - *center).abs().powf(*r),
            Family::PiecewiseLinear { knots } => {
                let (i, j) = segment(knots, x);
                let (x0, y0) = knots[i];
                let (x1, y1) = knots[j];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
            Family::Const { c } => *c,
            Family::Custom { eval, .. } => eval(x),
        };
        self.scale * v
    }

    pub fn has_derivative(&self) -> bool {
        !matches!(&self.family, Family::Custom { deriv: None, .. })
    }

    /// Analytic derivative; one-sided (from the right) at kinks.
    pub fn eval_deriv(&self, x: T) -> Option<T> {
        let d = match &self.family {
            Family::Power { beta } => {
                if *beta == T::zero() {
                    T::zero()
                } else {
                    *beta * x.powf(*beta - T::one())
                }
            }
            Family::Quadratic { c2, c1, .. } => lit::<T>(2.0) * *c2 * x + *c1,
            Family::Exp => x.exp(),
            Family::AbsPower { r, center } => {
                let u = x - *center;
                if u == T::zero() {
                    if *r > T::one() {
                        T::zero()
                    } else {
                        *r
                    }
                } else {
                    *r * u.abs().powf(*r - T::one()) * u.signum()
                }
            }
            Family::PiecewiseLinear { knots } => {
                let (i, j) = segment(knots, x);
                (knots[j].1 - knots[i].1) / (knots[j].0 - knots[i].0)
            }
            Family::Const { .. } => T::zero(),
            Family::Custom { deriv, .. } => deriv.as_ref()?(x),
        };
        Some(self.scale * d)
    }

    /// `|f'|` as a function in its own right, on the same domain.
    pub fn abs_derivative(&self) -> Option<FunctionSpec<T>> {
        if !self.has_derivative() {
            return None;
        }
        let me = self.clone();
        Some(FunctionSpec {
            family: Family::Custom {
                name: format!("|d/dx {}|", self.spec_text()),
                eval: Arc::new(move |x| me.eval_deriv(x).map_or(T::nan(), |d| d.abs())),
                deriv: None,
            },
            scale: T::one(),
            domain: self.domain,
            declared_class: Vec::new(),
        })
    }

    /// Minimum over a uniform sample of the domain is at least `-tol`.
    pub fn nonneg(&self, tol: T) -> bool {
        let n = 1000;
        (0..=n).all(|i| self.eval(self.domain.lerp(lit(i as f64 / n as f64))) >= -tol)
    }

    /// Compact text form, as accepted by the command line
    /// (`power:2@[0,1]`); custom functions render by name only.
    pub fn spec_text(&self) -> String {
        let body = match &self.family {
            Family::Power { beta } => format!("power:{beta}"),
            Family::Quadratic { c2, c1, c0 } => format!("quadratic:{c2},{c1},{c0}"),
            Family::Exp => "exp".into(),
            Family::AbsPower { r, center } => format!("abspow:{r},{center}"),
            Family::PiecewiseLinear { knots } => {
                let pts: Vec<String> = knots.iter().map(|(x, y)| format!("{x}/{y}")).collect();
                format!("pwl:{}", pts.join(","))
            }
            Family::Const { c } => format!("const:{c}"),
            Family::Custom { name, .. } => format!("custom:{name}"),
        };
        let scale = if self.scale == T::one() { String::new() } else { format!("{}*", self.scale) };
        format!("{scale}{body}@[{},{}]", self.domain.a(), self.domain.b())
    }
}

impl<T: Real> fmt::Display for FunctionSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_text())
    }
}

/// Indices of the knot segment used at `x`: the containing segment, or the
/// first/last one outside the knot range.
fn segment<T: Real>(knots: &[(T, T)], x: T) -> (usize, usize) {
    let last = knots.len() - 1;
    let idx = knots[1..last].iter().take_while(|k| k.0 <= x).count();
    (idx, idx + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit() -> Interval<f64> {
        Interval::new(0.0, 1.0).unwrap()
    }

    fn samples() -> Vec<FunctionSpec<f64>> {
        let i = Interval::new(0.1, 2.0).unwrap();
        vec![
            FunctionSpec::power(2.0, i).unwrap(),
            FunctionSpec::power(3.5, i).unwrap(),
            FunctionSpec::power(0.5, i).unwrap(),
            FunctionSpec::quadratic(-1.0, 1.0, 0.0, i).unwrap(),
            FunctionSpec::exp(i).unwrap(),
            FunctionSpec::abs_power(1.5, 0.7, i).unwrap(),
            FunctionSpec::constant(2.0, i).unwrap(),
            FunctionSpec::exp(i).unwrap().scaled(3.0),
        ]
    }

    #[test]
    fn derivative_matches_central_difference() {
        for f in samples() {
            for k in 1..=50 {
                let x = f.domain().lerp(k as f64 / 51.0);
                let h = 1e-6;
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                let d = f.eval_deriv(x).unwrap();
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1.0), "{f} at {x}: {d} vs {fd}");
            }
        }
    }

    #[test]
    fn piecewise_linear_and_kinks() {
        let f = FunctionSpec::piecewise_linear(vec![(0.0, 0.0), (0.3, 0.0), (1.0, 0.7)], unit()).unwrap();
        assert_eq!(f.eval(0.1), 0.0);
        assert!((f.eval(0.65) - 0.35).abs() < 1e-15);
        assert_eq!(f.eval_deriv(0.1), Some(0.0));
        assert!((f.eval_deriv(0.3).unwrap() - 1.0).abs() < 1e-15);
        assert!(FunctionSpec::piecewise_linear(vec![(0.0, 0.0)], unit()).is_err());
        let a = FunctionSpec::abs_power(1.0, 0.5, unit()).unwrap();
        assert_eq!(a.eval(0.25), 0.25);
        assert_eq!(a.eval_deriv(0.25), Some(-1.0));
    }

    #[test]
    fn abs_derivative_and_text() {
        let f = FunctionSpec::quadratic(1.0, -1.0, 0.0, unit()).unwrap();
        let g = f.abs_derivative().unwrap();
        assert_eq!(g.eval(0.0), 1.0);
        assert_eq!(g.eval(0.5), 0.0);
        assert_eq!(f.spec_text(), "quadratic:1,-1,0@[0,1]");
        assert_eq!(FunctionSpec::power(2.0, unit()).unwrap().scaled(3.0).spec_text(), "3*power:2@[0,1]");
        let c = FunctionSpec::custom("g", |x: f64| x, None, unit()).unwrap();
        assert!(c.abs_derivative().is_none());
        assert!(c.eval_deriv(0.3).is_none());
    }

    #[test]
    fn nonnegativity() {
        assert!(FunctionSpec::power(2.0, unit()).unwrap().nonneg(1e-12));
        let lin = FunctionSpec::piecewise_linear(vec![(0.0, -0.5), (1.0, 0.5)], unit()).unwrap();
        assert!(!lin.nonneg(1e-12));
    }
}
