//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::sync::Arc;
use std::time::Instant;

use fracineq::fracint::{rl_left, FractionalOrder, Interval};
use fracineq::hfam::registry::{convexity_truth, superadditivity_truth};
use fracineq::hfam::{check_h_convex, check_superadditive, FunctionSpec, HFunction, DEFAULT_CLASS_TOL};
use fracineq::quadcore::{gamma, integrate};
use fracineq::search::{min_slack_search, FamilyRange, SearchSpace};
use fracineq::selftest::{jacobi_rule_errors, JACOBI_EXPONENTS, JACOBI_ORDERS};
use fracineq::verify::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn iv(a: f64, b: f64) -> Interval<f64> {
    Interval::new(a, b).unwrap()
}

fn order(a: f64) -> FractionalOrder<f64> {
    FractionalOrder::new(a).unwrap()
}

fn bulk_opts() -> VerifyOptions {
    VerifyOptions { grid_n: 12, ..VerifyOptions::default() }
}

fn slack_floor(r: &InequalityReport, tol: f64) -> bool {
    r.slack_values().iter().all(|s| *s >= -(tol + r.quad_error))
}

fn describe(r: &InequalityReport) -> String {
    format!(
        "{} on [{}, {}] alpha={:?} p={:?}: {:?}",
        r.inputs.f, r.inputs.a, r.inputs.b, r.inputs.alpha, r.inputs.p, r.status
    )
}

/// Γ at positive integers and half-integers, by the recurrence from
/// Γ(1) = 1 and Γ(1/2) = √π.
fn gamma_half(x: f64) -> f64 {
    let (mut g, mut t) = if x.fract() == 0.0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while t < x - 0.25 {
        g *= t;
        t += 1.0;
    }
    g
}

fn simpson(g: impl Fn(f64) -> f64, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    let inner: f64 = (1..n).map(|k| g(lo + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (g(lo) + g(hi) + inner) * h / 3.0
}

/// `J_{a+}^α g(b)` with `b - t = (b-a)v^2`, which leaves the integrand
/// `2(b-a)^α v^(2α-1) g(b - (b-a)v^2)` bounded for `α >= 1/2`.
fn rl_left_brute(g: impl Fn(f64) -> f64, a: f64, b: f64, alpha: f64) -> f64 {
    let len = b - a;
    let kernel = |v: f64| 2.0 * len.powf(alpha) * v.powf(2.0 * alpha - 1.0) * g(b - len * v * v);
    simpson(kernel, 0.0, 1.0, 10_000) / gamma_half(alpha)
}

fn criterion_1() -> Outcome {
    let mut worst_lib = 0.0f64;
    let mut worst_oracle = 0.0f64;
    for (a, b) in [(0.0f64, 1.0f64), (1.0, 3.0)] {
        for alpha in [0.5, 1.0, 1.5, 2.0] {
            for beta in [0.0, 1.0, 2.0, 3.5] {
                let want = gamma_half(beta + 1.0) / gamma_half(beta + alpha + 1.0) * (b - a).powf(beta + alpha);
                let brute = rl_left_brute(|t| (t - a).powf(beta), a, b, alpha);
                worst_oracle = worst_oracle.max(((brute - want) / want).abs());
                let got =
                    rl_left(|t: f64| (t - a).powf(beta), iv(a, b), order(alpha), 1e-12).map_err(|e| e.to_string())?;
                worst_lib = worst_lib.max(((got.value - want) / want).abs());
            }
        }
    }
    let detail = format!("32 cases, worst rel. error {worst_lib:.2e}, closed form vs brute force {worst_oracle:.2e}");
    if worst_lib <= 1e-8 && worst_oracle <= 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn smooth_function(rng: &mut ChaCha8Rng, i: Interval<f64>) -> FunctionSpec<f64> {
    match rng.gen_range(0..4) {
        0 => FunctionSpec::quadratic(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), i),
        1 => FunctionSpec::exp(i).map(|f| f.scaled(rng.gen_range(0.1..3.0))),
        2 => FunctionSpec::power(rng.gen_range(0.5..5.0), i),
        _ => {
            let (w, c) = (rng.gen_range(0.5..4.0), rng.gen_range(-1.0..1.0));
            FunctionSpec::custom("sin", move |x: f64| (w * x).sin() + c, None, i)
        }
    }
    .unwrap()
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let a = rng.gen_range(0.0..2.0);
        let i = iv(a, a + rng.gen_range(0.1..2.0));
        let f = smooth_function(&mut rng, i);
        let frac = rl_left(|t| f.eval(t), i, order(1.0), 1e-13).map_err(|e| e.to_string())?;
        let plain = integrate(|t| f.eval(t), i.a(), i.b(), 1e-13).map_err(|e| e.to_string())?;
        worst = worst.max((frac.value - plain.value).abs());
    }
    let detail = format!("50 functions, worst abs. difference {worst:.2e}");
    if worst <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let intervals: Vec<(f64, f64)> = (0..10)
        .map(|_| {
            let a = rng.gen_range(-1.0..1.5);
            (a, a + rng.gen_range(0.1..2.0))
        })
        .collect();
    let opts = VerifyOptions::default();
    let mut worst = 0.0f64;
    let mut n = 0;
    for (a, b) in intervals {
        let i = iv(a, b);
        let fs = [
            FunctionSpec::quadratic(1.0, 0.0, 0.0, i).unwrap(),
            FunctionSpec::custom("x^3+x", |x: f64| x * x * x + x, Some(Arc::new(|x: f64| 3.0 * x * x + 1.0)), i)
                .unwrap(),
            FunctionSpec::exp(i).unwrap(),
            FunctionSpec::custom("x e^x", |x: f64| x * x.exp(), Some(Arc::new(|x: f64| (1.0 + x) * x.exp())), i)
                .unwrap(),
        ];
        for f in &fs {
            for alpha in [0.3, 0.5, 1.0, 1.7, 2.5] {
                let r = lemma1_residual(f, i, order(alpha), &opts).map_err(|e| e.to_string())?;
                let s = r.side_values();
                if s.len() != 2 {
                    return Err(format!("no sides for {}", describe(&r)));
                }
                worst = worst.max((s[0] - s[1]).abs() / s[0].abs().max(1.0));
                n += 1;
            }
        }
    }
    let detail = format!("{n} cases, worst scaled residual {worst:.2e}");
    if worst <= 1e-8 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Convex, nonnegative, differentiable function on `i` (which has `a >= 0`).
/// With `smooth_slope`, `|f'|` is convex as well.
fn convex_function(rng: &mut ChaCha8Rng, i: Interval<f64>, smooth_slope: bool) -> FunctionSpec<f64> {
    match rng.gen_range(0..3) {
        0 => {
            let lo = if smooth_slope { 2.0 } else { 1.0 };
            FunctionSpec::power(rng.gen_range(lo..4.0), i).unwrap().scaled(rng.gen_range(0.2..3.0))
        }
        1 => {
            let c2 = rng.gen_range(0.05..2.0);
            let c1 = rng.gen_range(-2.0..2.0);
            let c0 = c1 * c1 / (4.0 * c2) + rng.gen_range(0.0..1.0);
            FunctionSpec::quadratic(c2, c1, c0, i).unwrap()
        }
        _ => FunctionSpec::exp(i).unwrap().scaled(rng.gen_range(0.2..3.0)),
    }
}

fn nonneg_interval(rng: &mut ChaCha8Rng) -> Interval<f64> {
    let a = rng.gen_range(0.0..2.0);
    iv(a, a + rng.gen_range(0.05..2.0))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let opts = bulk_opts();
    let (mut worst, mut worst_linear, mut n_linear) = (f64::INFINITY, 0.0f64, 0);
    for k in 0..1000 {
        let i = nonneg_interval(&mut rng);
        let linear = k % 5 == 0;
        let f = if linear {
            FunctionSpec::quadratic(0.0, rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), i).unwrap()
        } else {
            convex_function(&mut rng, i, false)
        };
        let alpha = rng.gen_range(0.1..3.0);
        let r = verify_frac_hadamard_convex(&f, i, order(alpha), &opts).map_err(|e| e.to_string())?;
        if r.status != Status::Holds || !slack_floor(&r, opts.tol) {
            return Err(format!("instance {k}: {}", describe(&r)));
        }
        let m = r.min_slack().unwrap();
        worst = worst.min(m);
        if linear {
            n_linear += 1;
            worst_linear = r.slack_values().iter().fold(worst_linear, |w, s| w.max(s.abs()));
        }
    }
    let detail =
        format!("1000 instances hold, min slack {worst:.2e}; {n_linear} linear, max |slack| {worst_linear:.2e}");
    if worst_linear <= 1e-10 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main_h_set() -> Vec<HFunction<f64>> {
    let mut hs = vec![HFunction::identity(), HFunction::constant(1.0).unwrap()];
    hs.extend([0.25, 0.5, 0.75, 1.0].map(|s| HFunction::power(s).unwrap()));
    hs
}

fn criterion_5() -> Outcome {
    let opts = VerifyOptions::default();
    let unit = iv(0.0, 1.0);
    let sq = FunctionSpec::power(2.0, unit).unwrap();
    let r = verify_thm_main(&sq, &HFunction::identity(), unit, order(1.0), ExponentPair::new(2.0).unwrap(), &opts)
        .map_err(|e| e.to_string())?;
    let want = [2.0 / 3.0, 1.0, 2.0 / 3f64.sqrt()];
    let got = r.side_values();
    if got.len() != 3 || got.iter().zip(want).any(|(g, w)| (g - w).abs() > 1e-9) {
        return Err(format!("worked instance sides {got:?}, expected {want:?}"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = bulk_opts();
    let hs = main_h_set();
    let ps = [1.25, 1.5, 2.0, 3.0, 4.0];
    let (mut holds, mut gated, mut worst) = (0, 0, f64::INFINITY);
    for k in 0..500 {
        let h = &hs[rng.gen_range(0..hs.len())];
        let alpha = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let p = ps[rng.gen_range(0..ps.len())];
        let i = nonneg_interval(&mut rng);
        let f = convex_function(&mut rng, i, false);
        let r =
            verify_thm_main(&f, h, i, order(alpha), ExponentPair::new(p).unwrap(), &opts).map_err(|e| e.to_string())?;
        if alpha * p - p + 1.0 <= 0.0 {
            let code = r.reason.as_ref().map(|x| x.code);
            if r.status != Status::Inapplicable || code != Some(ReasonCode::HolderExponent) {
                return Err(format!("instance {k} should be inapplicable: {}", describe(&r)));
            }
            gated += 1;
        } else {
            if r.status != Status::Holds || !slack_floor(&r, opts.tol) {
                return Err(format!("instance {k} with {}: {}", h.description(), describe(&r)));
            }
            holds += 1;
            worst = worst.min(r.min_slack().unwrap());
        }
    }
    Ok(format!("worked instance {got:.6?}; {holds} hold (min slack {worst:.2e}), {gated} inapplicable by exponent"))
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let opts = bulk_opts();
    let hs = [HFunction::identity(), HFunction::square()];
    let mut worst = f64::INFINITY;
    for k in 0..200 {
        let h = &hs[k % 2];
        let alpha = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let a = rng.gen_range(-1.0..2.0);
        let i = iv(a, a + rng.gen_range(0.05..2.0));
        // t^2-convex functions are identically zero
        let f = if k % 2 == 1 {
            FunctionSpec::constant(0.0, i).unwrap()
        } else if a >= 0.0 {
            convex_function(&mut rng, i, false)
        } else {
            FunctionSpec::quadratic(rng.gen_range(0.05..2.0), 0.0, rng.gen_range(0.0..1.0), i).unwrap()
        };
        let r = verify_thm_superadd(&f, h, i, order(alpha), &opts).map_err(|e| e.to_string())?;
        if r.status != Status::Holds || !slack_floor(&r, opts.tol) {
            return Err(format!("instance {k} with {}: {}", h.description(), describe(&r)));
        }
        worst = worst.min(r.min_slack().unwrap());
    }
    let unit = iv(0.0, 1.0);
    let sq = FunctionSpec::power(2.0, unit).unwrap();
    let r = verify_thm_superadd(&sq, &HFunction::power(0.5).unwrap(), unit, order(1.0), &opts)
        .map_err(|e| e.to_string())?;
    match &r.reason {
        Some(reason)
            if r.status == Status::Inapplicable
                && reason.code == ReasonCode::NotSuperadditive
                && reason.witness.is_some() =>
        {
            Ok(format!(
                "200 instances hold, min slack {worst:.2e}; t^0.5 rejected with witness {:?}",
                reason.witness.as_ref().unwrap()
            ))
        }
        _ => Err(format!("t^0.5 not rejected: {}", describe(&r))),
    }
}

fn criterion_7() -> Outcome {
    let opts = VerifyOptions::default();
    let unit = iv(0.0, 1.0);
    let sq = FunctionSpec::power(2.0, unit).unwrap();
    let id = HFunction::identity();
    let r = verify_thm_trapezoid(&sq, &id, unit, order(1.0), ExponentPair::new(2.0).unwrap(), &opts)
        .map_err(|e| e.to_string())?;
    // (f(0)+f(1))/2 - ∫f = 1/6; the bound is (√7-1)(√7+1)/24 = 1/4
    let want = [1.0 / 6.0, 0.25];
    let got = r.side_values();
    if got.len() != 2 || got.iter().zip(want).any(|(g, w)| (g - w).abs() > 1e-4) {
        return Err(format!("worked instance sides {got:?}, expected {want:?}"));
    }
    let recip =
        verify_thm_trapezoid(&sq, &HFunction::reciprocal(), unit, order(1.0), ExponentPair::new(2.0).unwrap(), &opts)
            .map_err(|e| e.to_string())?;
    if recip.status != Status::Inapplicable {
        return Err(format!("reciprocal h not rejected: {}", describe(&recip)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let opts = bulk_opts();
    let hs = main_h_set();
    let mut worst = f64::INFINITY;
    let mut failures = Vec::new();
    for k in 0..300 {
        let h = &hs[rng.gen_range(0..hs.len())];
        let alpha = rng.gen_range(0.25..3.0);
        let p = rng.gen_range(1.1..4.0);
        let i = nonneg_interval(&mut rng);
        let f = convex_function(&mut rng, i, true);
        let r = verify_thm_trapezoid(&f, h, i, order(alpha), ExponentPair::new(p).unwrap(), &opts)
            .map_err(|e| e.to_string())?;
        if r.status != Status::Holds || !slack_floor(&r, opts.tol) {
            failures.push(format!(
                "instance {k} with {}: {} slacks {:?}",
                h.description(),
                describe(&r),
                r.slack_values()
            ));
        } else {
            worst = worst.min(r.min_slack().unwrap());
        }
    }
    let detail = format!(
        "worked instance {got:.5?}, reciprocal inapplicable; {} of 300 hold, min slack {worst:.2e}",
        300 - failures.len()
    );
    if failures.is_empty() {
        Ok(detail)
    } else {
        Err(format!("{detail}; first failure {}", failures[0]))
    }
}

fn criterion_8() -> Outcome {
    let reports = verify_reductions(8, 1e-10).map_err(|e| e.to_string())?;
    let bad: Vec<_> = reports.iter().filter(|r| r.status != Status::Holds).collect();
    let n_red = reports.iter().filter(|r| r.theorem_id == TheoremId::Reduction).count();
    if let Some(r) = bad.first() {
        return Err(format!("{} of {} reports fail, first {:?} {:?}", bad.len(), reports.len(), r.theorem_id, r.sides));
    }
    Ok(format!("{} reports hold ({n_red} reduction comparisons)", reports.len()))
}

fn criterion_9() -> Outcome {
    let (mut pos, mut neg) = (0, 0);
    for case in convexity_truth::<f64>() {
        let r = check_h_convex(&case.f, &case.h, case.interval, 24, DEFAULT_CLASS_TOL, 0).map_err(|e| e.to_string())?;
        if r.verdict != case.expected {
            return Err(format!("{} with {}: got {:?}", case.f, case.h.description(), r.verdict));
        }
        if r.passed() {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    for case in superadditivity_truth::<f64>() {
        let r = check_superadditive(&case.h, iv(0.0, 1.0), 24, DEFAULT_CLASS_TOL, 0).map_err(|e| e.to_string())?;
        if r.verdict != case.expected {
            return Err(format!("superadditivity of {}: got {:?}", case.h.description(), r.verdict));
        }
    }
    let detail = format!("{pos} positive and {neg} negative h-convexity labels, superadditivity labels reproduced");
    if pos >= 12 && neg >= 6 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn criterion_10() -> Outcome {
    let families = vec![
        FamilyRange::power((1.0, 4.0)),
        FamilyRange::quadratic((0.0, 2.0), (-2.0, 2.0), (-1.0, 1.0)),
        FamilyRange::exp(),
    ];
    let mut space = SearchSpace::new(TheoremId::FracHadamardConvex, families);
    space.budget = 2000;
    space.seed = 7;
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| min_slack_search(&space, false)).map_err(|e| e.to_string())
    };
    let first = run(4)?;
    let again = run(4)?;
    let single = run(1)?;
    if first.min_slack < -1e-8 {
        return Err(format!("min slack {:.3e} at {:?}", first.min_slack, first.argmin));
    }
    if first.summary() != again.summary() || first.summary() != single.summary() {
        return Err("summaries differ between runs or thread counts".into());
    }
    Ok(format!(
        "min slack {:.3e}, {} evaluated, {} inapplicable, identical on 1 and 4 threads",
        first.min_slack, first.n_evaluated, first.n_inapplicable
    ))
}

fn criterion_11() -> Outcome {
    let (mut worst_mass, mut worst_exact) = (0.0f64, 0.0f64);
    for (a, b) in JACOBI_EXPONENTS {
        for n in JACOBI_ORDERS {
            let (mass, mono) = jacobi_rule_errors(n, a, b).map_err(|e| e.to_string())?;
            worst_mass = worst_mass.max(mass);
            worst_exact = worst_exact.max(mono);
        }
    }
    let g = gamma(0.5).map_err(|e| e.to_string())?;
    let gerr = (g - PI.sqrt()).abs();
    let detail =
        format!("n <= 64: mass error {worst_mass:.2e}, exactness error {worst_exact:.2e}; |Γ(1/2) - √π| = {gerr:.2e}");
    if worst_mass <= 1e-12 && worst_exact <= 1e-11 && gerr <= 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("fractional integral of shifted powers", criterion_1),
        ("order one equals the plain integral", criterion_2),
        ("trapezoid defect identity", criterion_3),
        ("fractional midpoint-trapezoid chain", criterion_4),
        ("moment and Hölder bounds", criterion_5),
        ("superadditive bound", criterion_6),
        ("trapezoid defect bound", criterion_7),
        ("reductions", criterion_8),
        ("class labels", criterion_9),
        ("search soundness and determinism", criterion_10),
        ("quadrature self-test", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS {:>2} {name} ({secs:.1}s): {d}", k + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {d}", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
