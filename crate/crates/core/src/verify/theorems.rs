use super::{
    ExponentPair, InequalityReport, NamedValue, Reason, ReasonCode, ReportInputs, Status, TheoremId, VerifyError,
    VerifyOptions,
};
use crate::fracint::{rl_pair, FractionalOrder, Interval, Normalization};
use crate::hfam::{
    check_convex, check_h_convex, check_superadditive, h_moments, ClassCheckReport, FunctionSpec, HFunction, Moment,
};
use crate::quadcore::{integrate, integrate_singular, IntegralEstimate, QuadError, SingularEnd};

type Estimate = IntegralEstimate<f64>;

/// A computed side with its propagated absolute error.
struct Side {
    value: f64,
    error: f64,
}

impl Side {
    fn exact(value: f64) -> Self {
        Self { value, error: 0.0 }
    }

    fn of(e: Estimate) -> Self {
        Self { value: e.value, error: e.abs_error_estimate }
    }
}

enum Stop {
    Reason(Reason),
    Error(VerifyError),
}

impl From<VerifyError> for Stop {
    fn from(e: VerifyError) -> Self {
        Stop::Error(e)
    }
}

fn quad(r: Result<Estimate, QuadError<f64>>, what: &str) -> Result<Estimate, Stop> {
    match r {
        Ok(e) if e.value.is_finite() => Ok(e),
        Ok(e) => {
            Err(Stop::Reason(Reason::new(ReasonCode::DivergentIntegral, format!("{what} is not finite ({})", e.value))))
        }
        Err(e) if e.is_divergence() => {
            Err(Stop::Reason(Reason::new(ReasonCode::DivergentIntegral, format!("{what}: {e}"))))
        }
        Err(e) => Err(Stop::Error(e.into())),
    }
}

struct Draft<'a> {
    theorem: TheoremId,
    inputs: ReportInputs,
    opts: &'a VerifyOptions,
    gate: Option<Reason>,
}

impl<'a> Draft<'a> {
    fn new(
        theorem: TheoremId,
        f: &FunctionSpec<f64>,
        h: Option<&HFunction<f64>>,
        interval: Interval<f64>,
        alpha: Option<FractionalOrder<f64>>,
        p: Option<ExponentPair>,
        opts: &'a VerifyOptions,
    ) -> Result<Self, VerifyError> {
        if !f.domain().contains(&interval) {
            return Err(VerifyError::Invalid(format!(
                "interval [{}, {}] is outside the domain of {f}",
                interval.a(),
                interval.b()
            )));
        }
        let inputs = ReportInputs {
            f: f.spec_text(),
            h: h.map(HFunction::spec_text),
            a: interval.a(),
            b: interval.b(),
            alpha: alpha.map(FractionalOrder::get),
            p: p.map(|pq| pq.p()),
            seed: opts.seed,
        };
        Ok(Self { theorem, inputs, opts, gate: None })
    }

    /// Records a failed hypothesis; true when side computation should be
    /// skipped.
    fn fails(&mut self, reason: Option<Reason>) -> bool {
        if self.gate.is_none() {
            self.gate = reason;
        }
        self.gate.is_some() && !self.opts.force
    }

    fn stopped(self) -> Result<InequalityReport, VerifyError> {
        self.finish(Ok(Vec::new()))
    }

    fn finish(mut self, sides: Result<Vec<Side>, Stop>) -> Result<InequalityReport, VerifyError> {
        let sides = match sides {
            Ok(s) => s,
            Err(Stop::Error(e)) => return Err(e),
            Err(Stop::Reason(r)) => {
                self.fails(Some(r));
                Vec::new()
            }
        };
        let names = self.theorem.side_names();
        let quad_error = sides.iter().map(|s| s.error).fold(0.0, f64::max);
        let values: Vec<f64> = sides.iter().map(|s| s.value).collect();
        let slack_values: Vec<f64> = match values.as_slice() {
            [] => Vec::new(),
            [lhs, rhs] if self.theorem.is_identity() => vec![lhs - rhs],
            v => v.windows(2).map(|w| w[1] - w[0]).collect(),
        };
        let status = if self.gate.is_some() {
            Status::Inapplicable
        } else if self.theorem.is_identity() {
            let bound = self.opts.tol * values[0].abs().max(1.0) + quad_error;
            if slack_values[0].abs() <= bound {
                Status::Holds
            } else {
                Status::Violated
            }
        } else if slack_values.iter().all(|&s| s >= -(self.opts.tol + quad_error)) {
            Status::Holds
        } else {
            Status::Violated
        };
        Ok(InequalityReport {
            theorem_id: self.theorem,
            inputs: self.inputs,
            sides: names.iter().zip(&values).map(|(n, &v)| NamedValue::new(*n, v)).collect(),
            slacks: self
                .theorem
                .slack_names()
                .into_iter()
                .zip(slack_values)
                .map(|(n, v)| NamedValue::new(n, v))
                .collect(),
            status,
            reason: self.gate,
            quad_error,
        })
    }
}

fn class_reason(report: ClassCheckReport<f64>, code: ReasonCode, what: String) -> Option<Reason> {
    if report.passed() {
        return None;
    }
    let detail = format!("{what} (max scaled violation {:e})", report.max_violation);
    Some(Reason::new(code, detail).with_witness(report.witness))
}

fn h_convex_gate(
    f: &FunctionSpec<f64>,
    h: &HFunction<f64>,
    interval: Interval<f64>,
    opts: &VerifyOptions,
) -> Result<Option<Reason>, VerifyError> {
    let r = check_h_convex(f, h, interval, opts.grid_n, opts.class_tol, opts.seed)?;
    Ok(class_reason(r, ReasonCode::HypothesisFailed, format!("{f} is not h-convex for {}", h.description())))
}

fn convex_gate(
    f: &FunctionSpec<f64>,
    interval: Interval<f64>,
    opts: &VerifyOptions,
) -> Result<Option<Reason>, VerifyError> {
    let r = check_convex(f, interval, opts.grid_n, opts.class_tol, opts.seed)?;
    Ok(class_reason(r, ReasonCode::HypothesisFailed, format!("{f} is not convex")))
}

fn nonneg_left_end(interval: Interval<f64>) -> Option<Reason> {
    (interval.a() < 0.0).then(|| {
        Reason::new(ReasonCode::HypothesisFailed, format!("left end must satisfy a >= 0, got {}", interval.a()))
    })
}

fn moment_gate(name: &str, m: &Moment<f64>) -> Option<Reason> {
    m.is_divergent().then(|| Reason::new(ReasonCode::DivergentHMoment, format!("{name} diverges")))
}

fn converged(m: Moment<f64>) -> (f64, f64) {
    match m {
        Moment::Converged(e) => (e.value, e.abs_error_estimate),
        Moment::Divergent => (f64::INFINITY, 0.0),
    }
}

fn mean(f: &FunctionSpec<f64>, interval: Interval<f64>, opts: &VerifyOptions) -> Result<Side, Stop> {
    let e = quad(integrate(|t| f.eval(t), interval.a(), interval.b(), opts.quad_tol), "mean integral")?;
    Ok(Side::of(e.scaled(interval.len().recip())))
}

fn pair(
    f: &FunctionSpec<f64>,
    interval: Interval<f64>,
    alpha: FractionalOrder<f64>,
    norm: Normalization,
    opts: &VerifyOptions,
) -> Result<Estimate, Stop> {
    quad(rl_pair(|t| f.eval(t), interval, alpha, norm, opts.quad_tol), "fractional integral pair")
}

fn ends(f: &FunctionSpec<f64>, interval: Interval<f64>) -> (f64, f64, f64) {
    let fa = f.eval(interval.a());
    let fb = f.eval(interval.b());
    (fa, fb, f.eval(interval.midpoint()))
}

/// Classical chain `f((a+b)/2) <= mean <= (f(a)+f(b))/2` for convex `f`.
pub fn verify_hadamard_classical(
    f: &FunctionSpec<f64>,
    interval: Interval<f64>,
    opts: &VerifyOptions,
) -> Result<InequalityReport, VerifyError> {
    let mut d = Draft::new(TheoremId::HadamardClassical, f, None, interval, None, None, opts)?;
    if d.fails(convex_gate(f, interval, opts)?) {
        return d.stopped();
    }
    let sides = (|| {
        let (fa, fb, fm) = ends(f, interval);
        Ok(vec![Side::exact(fm), mean(f, interval, opts)?, Side::exact((fa + fb) / 2.0)])
    })();
    d.finish(sides)
}

/// `f((a+b)/2) / (2h(1/2)) <= mean <= (f(a)+f(b)) ∫_0^1 h` for h-convex `f`.
pub fn verify_sarikaya_h(
    f: &FunctionSpec<f64>,
    h: &HFunction<f64>,
    interval: Interval<f64>,
    opts: &VerifyOptions,
) -> Result<InequalityReport, VerifyError> {
    let mut d = Draft::new(TheoremId::SarikayaH, f, Some(h), interval, None, None, opts)?;
    let h_half = h.eval(0.5);
    if d.fails((!(h_half > 0.0)).then(|| Reason::new(ReasonCode::HypothesisFailed, "h(1/2) must be positive"))) {
        return d.stopped();
    }
    let one = FractionalOrder::new(1.0)?;
    let m = h_moments(h, one, 1.0, opts.quad_tol)?;
    if d.fails(moment_gate("integral of h over [0, 1]", &m.mq_full)) || d.fails(h_convex_gate(f, h, interval, opts)?) {
        return d.stopped();
    }
    let sides = (|| {
        let (fa, fb, fm) = ends(f, interval);
        let (ih, ih_err) = converged(m.mq_full);
        Ok(vec![
            Side::exact(fm / (2.0 * h_half)),
            mean(f, interval, opts)?,
            Side { value: (fa + fb) * ih, error: (fa + fb).abs() * ih_err },
        ])
    })();
    d.finish(sides)
}

/// `f((a+b)/2) <= Γ(α+1)/(2(b-a)^α) [J_{a+} f(b) + J_{b-} f(a)] <= (f(a)+f(b))/2`.
pub fn verify_frac_hadamard_convex(
    f: &FunctionSpec<f64>,
    interval: Interval<f64>,
    alpha: FractionalOrder<f64>,
    opts: &VerifyOptions,
) -> Result<InequalityReport, VerifyError> {
    let mut d = Draft::new(TheoremId::FracHadamardConvex, f, None, interval, Some(alpha), None, opts)?;
    if d.fails(nonneg_left_end(interval)) || d.fails(convex_gate(f, interval, opts)?) {
        return d.stopped();
    }
    let sides = (|| {
        let (fa, fb, fm) = ends(f, interval);
        let middle = pair(f, interval, alpha, Normalization::HalfGamma1OverLen, opts)?;
        Ok(vec![Side::exact(fm), Side::of(middle), Side::exact((fa + fb) / 2.0)])
    })();
    d.finish(sides)
}

fn trapezoid_defect(
    f: &FunctionSpec<f64>,
    interval: Interval<f64>,
    alpha: FractionalOrder<f64>,
    opts: &VerifyOptions,
) -> Result<Side, Stop> {
    let (fa, fb, _) = ends(f, interval);
    let p = pair(f, interval, alpha, Normalization::HalfGamma1OverLen, opts)?;
    Ok(Side { value: (fa + fb) / 2.0 - p.value, error: p.abs_error_estimate })
}

fn missing_derivative(f: &FunctionSpec<f64>) -> Option<Reason> {
    (!f.has_derivative()).then(|| Reason::new(ReasonCode::MissingDerivative, format!("{f} has no derivative")))
}

/// Two-sided check of the identity
/// `(f(a)+f(b))/2 - Γ(α+1)/(2(b-a)^α)[J_{a+} f(b) + J_{b-} f(a)]
///  = (b-a)/2 ∫_0^1 [(1-t)^α - t^α] f'(ta + (1-t)b) dt`.
///
/// The right side is integrated in the `t` variable with the powers folded
/// into Jacobi weights, independently of the fractional integrals on the
/// left.
pub fn lemma1_residual(
    f: &FunctionSpec<f64>,
    interval: Interval<f64>,
    alpha: FractionalOrder<f64>,
    opts: &VerifyOptions,
) -> Result<InequalityReport, VerifyError> {
    let mut d = Draft::new(TheoremId::Lemma1Identity, f, None, interval, Some(alpha), None, opts)?;
    if d.fails(missing_derivative(f)) {
        return d.stopped();
    }
    let sides = (|| {
        let lhs = trapezoid_defect(f, interval, alpha, opts)?;
        let (a, b) = (interval.a(), interval.b());
        let g = |t: f64| f.eval_deriv(t * a + (1.0 - t) * b).unwrap_or(f64::NAN);
        let al = alpha.get();
        let tol = opts.quad_tol;
        let right_w = quad(integrate_singular(g, 0.0, 1.0, al, SingularEnd::Right, tol), "derivative kernel")?;
        let left_w = quad(integrate_singular(g, 0.0, 1.0, al, SingularEnd::Left, tol), "derivative kernel")?;
        let rhs = right_w.minus(left_w).scaled(interval.len() / 2.0);
        Ok(vec![lhs, Side::of(rhs)])
    })();
    d.finish(sides)
}

/// `Γ(α)/(b-a)^α [J_{a+} f(b) + J_{b-} f(a)] <= (f(a)+f(b)) ∫_0^1 t^(α-1)[h(t)+h(1-t)]
///  <= 2(f(a)+f(b)) (αp-p+1)^(-1/p) (∫_0^1 h^q)^(1/q)`.
pub fn verify_thm_main(
    f: &FunctionSpec<f64>,
    h: &HFunction<f64>,
    interval: Interval<f64>,
    alpha: FractionalOrder<f64>,
    pq: ExponentPair,
    opts: &VerifyOptions,
) -> Result<InequalityReport, VerifyError> {
    let mut d = Draft::new(TheoremId::ThmMain, f, Some(h), interval, Some(alpha), Some(pq), opts)?;
    let (al, p, q) = (alpha.get(), pq.p(), pq.q());
    let holder = al * p - p + 1.0;
    let holder_gate = (holder <= 0.0)
        .then(|| Reason::new(ReasonCode::HolderExponent, format!("alpha p - p + 1 = {holder} must be positive")));
    if d.fails(holder_gate) {
        return d.stopped();
    }
    let m = h_moments(h, alpha, q, opts.quad_tol)?;
    if d.fails(moment_gate("m_alpha", &m.m_alpha))
        || d.fails(moment_gate("integral of h^q", &m.mq_full))
        || d.fails(h_convex_gate(f, h, interval, opts)?)
    {
        return d.stopped();
    }
    let sides = (|| {
        let (fa, fb, _) = ends(f, interval);
        let s = fa + fb;
        let lhs = pair(f, interval, alpha, Normalization::GammaOverLen, opts)?;
        let (ma, ma_err) = converged(m.m_alpha);
        let (mq, mq_err) = converged(m.mq_full);
        let k = 2.0 * s * holder.powf(-1.0 / p);
        let root = mq.powf(1.0 / q);
        Ok(vec![
            Side::of(lhs),
            Side { value: s * ma, error: s.abs() * ma_err },
            Side { value: k * root, error: if mq > 0.0 { (k * root / (q * mq)).abs() * mq_err } else { 0.0 } },
        ])
    })();
    d.finish(sides)
}

/// Largest sampled value of
/// `f(ta+(1-t)b) + f((1-t)a+tb) - [h(t)+h(1-t)][f(a)+f(b)]` over interior
/// `t`; nonpositive when the pointwise bound behind the moment side holds.
pub fn pointwise_sum_defect(f: &FunctionSpec<f64>, h: &HFunction<f64>, interval: Interval<f64>, samples: usize) -> f64 {
    let (a, b) = (interval.a(), interval.b());
    let s = f.eval(a) + f.eval(b);
    (1..=samples)
        .map(|k| {
            let t = k as f64 / (samples + 1) as f64;
            f.eval(t * a + (1.0 - t) * b) + f.eval((1.0 - t) * a + t * b) - (h.eval(t) + h.eval(1.0 - t)) * s
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `Γ(α)/(b-a)^α [J_{a+} f(b) + J_{b-} f(a)] <= h(1)/α (f(a)+f(b))` for
/// superadditive `h`.
pub fn verify_thm_superadd(
    f: &FunctionSpec<f64>,
    h: &HFunction<f64>,
    interval: Interval<f64>,
    alpha: FractionalOrder<f64>,
    opts: &VerifyOptions,
) -> Result<InequalityReport, VerifyError> {
    let mut d = Draft::new(TheoremId::ThmSuperadd, f, Some(h), interval, Some(alpha), None, opts)?;
    let unit = Interval::new(0.0, 1.0)?;
    let sup = check_superadditive(h, unit, opts.grid_n, opts.class_tol, opts.seed)?;
    let sup_gate =
        class_reason(sup, ReasonCode::NotSuperadditive, format!("{} is not superadditive on [0, 1]", h.description()));
    if d.fails(sup_gate) || d.fails(h_convex_gate(f, h, interval, opts)?) {
        return d.stopped();
    }
    let sides = (|| {
        let (fa, fb, _) = ends(f, interval);
        let lhs = pair(f, interval, alpha, Normalization::GammaOverLen, opts)?;
        Ok(vec![Side::of(lhs), Side::exact(h.eval(1.0) / alpha.get() * (fa + fb))])
    })();
    d.finish(sides)
}

/// `((2^(αp+1) - 1) / (2^(αp+1)(αp+1)))^(1/p) - (1 / (2^(αp+1)(αp+1)))^(1/p)`.
pub fn trapezoid_constant(alpha: f64, p: f64) -> f64 {
    let ap1 = alpha * p + 1.0;
    let k = 2f64.powf(ap1);
    ((k - 1.0) / (k * ap1)).powf(1.0 / p) - (1.0 / (k * ap1)).powf(1.0 / p)
}

/// `|(f(a)+f(b))/2 - Γ(α+1)/(2(b-a)^α)[J_{a+} f(b) + J_{b-} f(a)]|
///  <= (b-a)(|f'(a)|+|f'(b)|)/2 C(α,p) [(∫_0^(1/2) h^q)^(1/q) + (∫_(1/2)^1 h^q)^(1/q)]`
/// for `|f'|` h-convex.
pub fn verify_thm_trapezoid(
    f: &FunctionSpec<f64>,
    h: &HFunction<f64>,
    interval: Interval<f64>,
    alpha: FractionalOrder<f64>,
    pq: ExponentPair,
    opts: &VerifyOptions,
) -> Result<InequalityReport, VerifyError> {
    let mut d = Draft::new(TheoremId::ThmTrapezoid, f, Some(h), interval, Some(alpha), Some(pq), opts)?;
    if d.fails(missing_derivative(f)) || d.fails(nonneg_left_end(interval)) {
        return d.stopped();
    }
    let q = pq.q();
    let m = h_moments(h, alpha, q, opts.quad_tol)?;
    if d.fails(moment_gate("integral of h^q over [0, 1/2]", &m.mq_lo))
        || d.fails(moment_gate("integral of h^q over [1/2, 1]", &m.mq_hi))
    {
        return d.stopped();
    }
    let df = f.abs_derivative().expect("derivative checked above");
    let r = check_h_convex(&df, h, interval, opts.grid_n, opts.class_tol, opts.seed)?;
    if d.fails(class_reason(r, ReasonCode::HypothesisFailed, format!("|f'| is not h-convex for {}", h.description()))) {
        return d.stopped();
    }
    let sides = (|| {
        let lhs = trapezoid_defect(f, interval, alpha, opts)?;
        let (a, b) = (interval.a(), interval.b());
        let slope = df.eval(a) + df.eval(b);
        let front = interval.len() * slope / 2.0 * trapezoid_constant(alpha.get(), pq.p());
        let (lo, lo_err) = converged(m.mq_lo);
        let (hi, hi_err) = converged(m.mq_hi);
        let root = |m: f64, e: f64| {
            let r = m.powf(1.0 / q);
            (r, if m > 0.0 { r / (q * m) * e } else { 0.0 })
        };
        let (rl, el) = root(lo, lo_err);
        let (rh, eh) = root(hi, hi_err);
        Ok(vec![
            Side { value: lhs.value.abs(), error: lhs.error },
            Side { value: front * (rl + rh), error: (front * (el + eh)).abs() },
        ])
    })();
    d.finish(sides)
}
