//! Built-in oracle checks for the numeric kernels, runnable from the
//! command line.

use crate::fracint::{rl_left, rl_pair, rl_right, FractionalOrder, Interval, Normalization};
use crate::quadcore::{gamma, gauss_jacobi, integrate, integrate_singular, jacobi_mass, QuadError, SingularEnd};

/// `Γ(x)` reference values (50-digit evaluation, rounded to f64).
pub const GAMMA_REFERENCE: [(f64, f64); 6] = [
    (0.5, 1.772_453_850_905_516),
    (0.1, 9.513_507_698_668_732),
    (1.5, 0.886_226_925_452_758),
    (2.5, 1.329_340_388_179_137),
    (7.3, 1_271.423_633_663_908_8),
    (33.7, 3.032_162_654_739_871_8e36),
];

/// Exponent pairs and orders covered by the Gauss-Jacobi checks.
pub const JACOBI_EXPONENTS: [(f64, f64); 6] =
    [(0.0, 0.0), (-0.5, 0.0), (0.0, -0.5), (-0.75, 0.5), (1.5, -0.3), (2.0, 2.0)];
pub const JACOBI_ORDERS: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];

#[derive(Debug, Clone, PartialEq)]
pub struct SelfCheck {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SelftestSummary {
    pub checks: Vec<SelfCheck>,
}

impl SelftestSummary {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// `(suite, passed, total)` in first-seen order.
    pub fn by_suite(&self) -> Vec<(&'static str, usize, usize)> {
        let mut out: Vec<(&'static str, usize, usize)> = Vec::new();
        for c in &self.checks {
            match out.iter_mut().find(|s| s.0 == c.suite) {
                Some(s) => {
                    s.1 += c.passed as usize;
                    s.2 += 1;
                }
                None => out.push((c.suite, c.passed as usize, 1)),
            }
        }
        out
    }

    fn record(&mut self, suite: &'static str, name: String, err: f64, tol: f64) {
        self.checks.push(SelfCheck {
            suite,
            name,
            passed: err <= tol,
            detail: format!("error {err:.3e}, tolerance {tol:.0e}"),
        });
    }

    fn record_failure(&mut self, suite: &'static str, name: String, e: QuadError<f64>) {
        self.checks.push(SelfCheck { suite, name, passed: false, detail: e.to_string() });
    }
}

/// Moments `∫_{-1}^{1} (1-x)^a (1+x)^b x^k dx` for `k < count`, from the
/// three-term recurrence `(k+a+b+2) M_{k+1} = k M_{k-1} + (b-a) M_k`.
pub fn jacobi_moments(a: f64, b: f64, count: usize) -> Result<Vec<f64>, QuadError<f64>> {
    let mut m = vec![jacobi_mass(a, b)?];
    m.push((b - a) / (a + b + 2.0) * m[0]);
    for k in 1..count {
        let next = (k as f64 * m[k - 1] + (b - a) * m[k]) / (k as f64 + a + b + 2.0);
        m.push(next);
    }
    m.truncate(count);
    Ok(m)
}

/// Worst relative mass error and worst scaled monomial error of the
/// `n`-point rule.
pub fn jacobi_rule_errors(n: usize, a: f64, b: f64) -> Result<(f64, f64), QuadError<f64>> {
    let r = gauss_jacobi(n, a, b)?;
    let m = jacobi_moments(a, b, 2 * n)?;
    let mass = ((r.weights().iter().sum::<f64>() - m[0]) / m[0]).abs();
    let mut worst = 0.0f64;
    for (k, mk) in m.iter().enumerate() {
        let got = r.apply(|x| x.powi(k as i32));
        let scale = r.apply(|x| x.abs().powi(k as i32)).max(mk.abs());
        worst = worst.max((got - mk).abs() / scale);
    }
    Ok((mass, worst))
}

fn quadcore_suite(s: &mut SelftestSummary) {
    const SUITE: &str = "quadcore";
    for (x, want) in GAMMA_REFERENCE {
        match gamma(x) {
            Ok(g) => s.record(SUITE, format!("gamma({x})"), ((g - want) / want).abs(), 1e-13),
            Err(e) => s.record_failure(SUITE, format!("gamma({x})"), e),
        }
    }
    for (a, b) in JACOBI_EXPONENTS {
        for n in JACOBI_ORDERS {
            let name = format!("gauss_jacobi(n={n}, a={a}, b={b})");
            match jacobi_rule_errors(n, a, b) {
                Ok((mass, mono)) => {
                    s.record(SUITE, format!("{name} mass"), mass, 1e-12);
                    s.record(SUITE, format!("{name} exactness"), mono, 1e-11);
                }
                Err(e) => s.record_failure(SUITE, name, e),
            }
        }
    }
    let name = "integrate x^2 on [0, 1]".to_string();
    match integrate(|x: f64| x * x, 0.0, 1.0, 1e-12) {
        Ok(r) => s.record(SUITE, name, (r.value - 1.0 / 3.0).abs(), 1e-14),
        Err(e) => s.record_failure(SUITE, name, e),
    }
    let name = "integrate_singular t^(-1/2) on [0, 1]".to_string();
    match integrate_singular(|_: f64| 1.0, 0.0, 1.0, -0.5, SingularEnd::Left, 1e-12) {
        Ok(r) => s.record(SUITE, name, (r.value - 2.0).abs(), 1e-13),
        Err(e) => s.record_failure(SUITE, name, e),
    }
    let name = "integrate t^(-1/2) reports non-convergence".to_string();
    let diverged = matches!(integrate(|t: f64| t.powf(-0.5), 0.0, 1.0, 1e-12), Err(e) if e.is_divergence());
    s.checks.push(SelfCheck { suite: SUITE, name, passed: diverged, detail: String::new() });
}

fn fracint_suite(s: &mut SelftestSummary) -> Result<(), QuadError<f64>> {
    const SUITE: &str = "fracint";
    for (lo, hi) in [(0.0, 1.0), (1.0, 3.0)] {
        let i = Interval::new(lo, hi)?;
        for alpha in [0.5, 1.0, 1.5, 2.0] {
            let order = FractionalOrder::new(alpha)?;
            for beta in [0.0, 1.0, 2.0, 3.5] {
                // J_{a+}^α (t-a)^β (b) = Γ(β+1)/Γ(β+α+1) (b-a)^(β+α)
                let want = gamma(beta + 1.0)? / gamma(beta + alpha + 1.0)? * (hi - lo).powf(beta + alpha);
                let got = rl_left(|t: f64| (t - lo).powf(beta), i, order, 1e-13)?.value;
                s.record(
                    SUITE,
                    format!("rl_left (t-a)^{beta}, alpha={alpha}, [{lo},{hi}]"),
                    ((got - want) / want).abs(),
                    1e-10,
                );
                // reflection: J_{b-}^α (b-t)^β (a) has the same value
                let got = rl_right(|t: f64| (hi - t).powf(beta), i, order, 1e-13)?.value;
                s.record(
                    SUITE,
                    format!("rl_right (b-t)^{beta}, alpha={alpha}, [{lo},{hi}]"),
                    ((got - want) / want).abs(),
                    1e-10,
                );
            }
            let mid = rl_pair(|t| t, i, order, Normalization::HalfGamma1OverLen, 1e-13)?.value;
            s.record(
                SUITE,
                format!("rl_pair linear, alpha={alpha}, [{lo},{hi}]"),
                (mid - (lo + hi) / 2.0).abs(),
                1e-12,
            );
        }
    }
    Ok(())
}

/// Runs every built-in check.
pub fn run() -> SelftestSummary {
    let mut s = SelftestSummary::default();
    quadcore_suite(&mut s);
    if let Err(e) = fracint_suite(&mut s) {
        s.record_failure("fracint", "setup".into(), e);
    }
    s
}
