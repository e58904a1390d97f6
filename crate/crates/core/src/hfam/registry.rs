//! Built-in test functions and h-functions with analytically known class
//! labels.

use super::{ClassTag, FunctionSpec, HFunction, HfamError, Verdict};
use crate::fracint::Interval;
use crate::real::{lit, Real};

/// A pairing `(f, h)` on `interval` with its known h-convexity label.
#[derive(Debug, Clone)]
pub struct ConvexityTruth<T> {
    pub f: FunctionSpec<T>,
    pub h: HFunction<T>,
    pub interval: Interval<T>,
    pub expected: Verdict,
}

/// An h-function with its known superadditivity label on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct SuperadditivityTruth<T> {
    pub h: HFunction<T>,
    pub expected: Verdict,
}

fn iv<T: Real>(a: f64, b: f64) -> Interval<T> {
    Interval::new(lit(a), lit(b)).expect("static interval")
}

fn ok<V, T: Real>(r: Result<V, HfamError<T>>) -> V {
    r.expect("static registry entry")
}

/// `x^2, x^3, e^x, |x - 1/2|, max(0, x - 0.3), 2, sqrt(x), x(1 - x)` on
/// `[0, 1]`, tagged with the classes they belong to.
pub fn functions<T: Real>() -> Vec<FunctionSpec<T>> {
    let unit = iv(0.0, 1.0);
    let convex = || vec![ClassTag::Convex, ClassTag::PFunction, ClassTag::GodunovaLevin];
    vec![
        ok(FunctionSpec::power(lit(2.0), unit)).with_classes(convex()),
        ok(FunctionSpec::power(lit(3.0), unit)).with_classes(convex()),
        ok(FunctionSpec::exp(unit)).with_classes(convex()),
        ok(FunctionSpec::abs_power(T::one(), lit(0.5), unit)).with_classes(convex()),
        max_shifted(lit(0.3), unit).with_classes(convex()),
        ok(FunctionSpec::constant(lit(2.0), unit)).with_classes(convex()),
        ok(FunctionSpec::power(lit(0.5), unit)).with_classes(vec![
            ClassTag::PFunction,
            ClassTag::GodunovaLevin,
            ClassTag::SConvex(lit(0.5)),
        ]),
        ok(FunctionSpec::quadratic(-T::one(), T::one(), T::zero(), unit)),
    ]
}

/// `max(0, x - c)` as a piecewise-linear function on `domain`.
pub fn max_shifted<T: Real>(c: T, domain: Interval<T>) -> FunctionSpec<T> {
    let knots = vec![(domain.a(), T::zero()), (c, T::zero()), (domain.b(), domain.b() - c)];
    ok(FunctionSpec::piecewise_linear(knots, domain))
}

/// `λ, 1, λ^s (s = 1/4, 1/2, 3/4), 1/λ, λ^2`.
pub fn h_functions<T: Real>() -> Vec<HFunction<T>> {
    vec![
        HFunction::identity(),
        ok(HFunction::constant(T::one())),
        ok(HFunction::power(lit(0.25))),
        ok(HFunction::power(lit(0.5))),
        ok(HFunction::power(lit(0.75))),
        HFunction::reciprocal(),
        HFunction::square(),
    ]
}

pub fn convexity_truth<T: Real>() -> Vec<ConvexityTruth<T>> {
    let unit = iv::<T>(0.0, 1.0);
    let id = HFunction::identity;
    let one = || ok(HFunction::constant(T::one()));
    let root = || ok(HFunction::power(lit(0.5)));
    let recip = HFunction::reciprocal;
    let sq = HFunction::square;
    let x2 = || ok(FunctionSpec::power(lit(2.0), unit));
    let expo = || ok(FunctionSpec::exp(unit));
    let two = || ok(FunctionSpec::constant(lit(2.0), unit));
    let sqrt = || ok(FunctionSpec::power(lit(0.5), unit));
    let bump = || ok(FunctionSpec::quadratic(-T::one(), T::one(), T::zero(), unit));
    let on_unit = |f: FunctionSpec<T>, h: HFunction<T>, expected| ConvexityTruth { f, h, interval: unit, expected };
    use Verdict::{Fail, Pass};

    let cubic_domain = iv(0.0, 2.0);
    vec![
        on_unit(x2(), id(), Pass),
        on_unit(x2(), one(), Pass),
        on_unit(x2(), root(), Pass),
        on_unit(x2(), recip(), Pass),
        ConvexityTruth {
            f: ok(FunctionSpec::power(lit(3.0), cubic_domain)),
            h: id(),
            interval: cubic_domain,
            expected: Pass,
        },
        on_unit(expo(), id(), Pass),
        on_unit(expo(), one(), Pass),
        on_unit(ok(FunctionSpec::abs_power(T::one(), lit(0.5), unit)), id(), Pass),
        on_unit(max_shifted(lit(0.3), unit), id(), Pass),
        on_unit(two(), id(), Pass),
        on_unit(two(), one(), Pass),
        on_unit(two(), root(), Pass),
        on_unit(sqrt(), one(), Pass),
        on_unit(sqrt(), recip(), Pass),
        on_unit(sqrt(), root(), Pass),
        on_unit(sqrt(), id(), Fail),
        on_unit(bump(), id(), Fail),
        on_unit(bump(), one(), Fail),
        on_unit(bump(), recip(), Fail),
        on_unit(x2(), sq(), Fail),
        on_unit(two(), sq(), Fail),
        on_unit(expo(), sq(), Fail),
        on_unit(sqrt(), sq(), Fail),
        on_unit(
            ok(FunctionSpec::piecewise_linear(vec![(T::zero(), lit(-0.5)), (T::one(), lit(0.5))], unit)),
            id(),
            Fail,
        ),
    ]
}

pub fn superadditivity_truth<T: Real>() -> Vec<SuperadditivityTruth<T>> {
    use Verdict::{Fail, Pass};
    vec![
        SuperadditivityTruth { h: HFunction::identity(), expected: Pass },
        SuperadditivityTruth { h: HFunction::square(), expected: Pass },
        SuperadditivityTruth { h: ok(HFunction::power(lit(1.5))), expected: Pass },
        SuperadditivityTruth { h: ok(HFunction::constant(T::one())), expected: Fail },
        SuperadditivityTruth { h: ok(HFunction::power(lit(0.5))), expected: Fail },
        SuperadditivityTruth { h: HFunction::reciprocal(), expected: Fail },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfam::{check_h_convex, check_superadditive, DEFAULT_CLASS_TOL};

    #[test]
    fn labels_reproduced_on_small_grid() {
        for case in convexity_truth::<f64>() {
            let r = check_h_convex(&case.f, &case.h, case.interval, 8, DEFAULT_CLASS_TOL, 0).unwrap();
            assert_eq!(r.verdict, case.expected, "{} with {}", case.f, case.h);
        }
        for case in superadditivity_truth::<f64>() {
            let unit = Interval::new(0.0, 1.0).unwrap();
            let r = check_superadditive(&case.h, unit, 8, DEFAULT_CLASS_TOL, 0).unwrap();
            assert_eq!(r.verdict, case.expected, "{}", case.h);
        }
    }

    #[test]
    fn label_counts() {
        let cases = convexity_truth::<f64>();
        assert!(cases.iter().filter(|c| c.expected == Verdict::Pass).count() >= 12);
        assert!(cases.iter().filter(|c| c.expected == Verdict::Fail).count() >= 6);
    }

    #[test]
    fn registry_is_well_formed() {
        assert_eq!(functions::<f64>().len(), 8);
        assert_eq!(h_functions::<f32>().len(), 7);
        for h in h_functions::<f64>() {
            for k in 1..100 {
                assert!(h.eval(k as f64 / 100.0) > 0.0);
            }
        }
    }
}
