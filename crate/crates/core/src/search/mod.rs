//! Worst-case slack search and tightness profiles over verifier inputs.

mod halton;

pub use halton::{radical_inverse, Halton};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fracint::Interval;
use crate::hfam::{FunctionSpec, HFunction, HfamError};
use crate::verify::{
    InequalityReport, Instance, NamedValue, Reason, ReasonCode, ReportInputs, Status, TheoremId, VerifyError,
    VerifyOptions,
};

/// Local refinement settings.
pub const REFINE_STARTS: usize = 5;
pub const REFINE_ITERATIONS: usize = 60;
pub const REFINE_SHRINK: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid search space: {0}")]
    Invalid(String),
    #[error("every sampled instance was inapplicable ({n_inapplicable} of them)")]
    AllInapplicable { n_inapplicable: usize },
    #[error("gave up after {rejected} rejected draws")]
    RejectionLimit { rejected: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Power,
    Quadratic,
    Exp,
    AbsPower,
    Const,
}

impl FamilyKind {
    pub fn param_count(self) -> usize {
        match self {
            FamilyKind::Power | FamilyKind::Const => 1,
            FamilyKind::AbsPower => 2,
            FamilyKind::Quadratic => 3,
            FamilyKind::Exp => 0,
        }
    }
}

/// A function family with one range per continuous parameter:
/// `power: β`, `quadratic: c2, c1, c0`, `abs_power: r, center`, `const: c`.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyRange {
    pub kind: FamilyKind,
    pub params: Vec<(f64, f64)>,
}

impl FamilyRange {
    pub fn power(beta: (f64, f64)) -> Self {
        Self { kind: FamilyKind::Power, params: vec![beta] }
    }

    pub fn quadratic(c2: (f64, f64), c1: (f64, f64), c0: (f64, f64)) -> Self {
        Self { kind: FamilyKind::Quadratic, params: vec![c2, c1, c0] }
    }

    pub fn exp() -> Self {
        Self { kind: FamilyKind::Exp, params: Vec::new() }
    }

    pub fn abs_power(r: (f64, f64), center: (f64, f64)) -> Self {
        Self { kind: FamilyKind::AbsPower, params: vec![r, center] }
    }

    pub fn constant(c: (f64, f64)) -> Self {
        Self { kind: FamilyKind::Const, params: vec![c] }
    }

    pub fn build(&self, params: &[f64], interval: Interval<f64>) -> Result<FunctionSpec<f64>, HfamError<f64>> {
        match self.kind {
            FamilyKind::Power => FunctionSpec::power(params[0], interval),
            FamilyKind::Quadratic => FunctionSpec::quadratic(params[0], params[1], params[2], interval),
            FamilyKind::Exp => FunctionSpec::exp(interval),
            FamilyKind::AbsPower => FunctionSpec::abs_power(params[0], params[1], interval),
            FamilyKind::Const => FunctionSpec::constant(params[0], interval),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub theorem: TheoremId,
    pub f_families: Vec<FamilyRange>,
    pub h_set: Vec<HFunction<f64>>,
    pub a_range: (f64, f64),
    pub b_range: (f64, f64),
    pub alpha_range: (f64, f64),
    pub p_range: Option<(f64, f64)>,
    pub budget: usize,
    pub seed: u64,
    pub opts: VerifyOptions,
}

impl SearchSpace {
    /// A space with the given theorem and families, `a, b ∈ [0, 2]`,
    /// `α ∈ [0.25, 3]`, `p ∈ [1.1, 4]`, budget 1000 and class checks on a
    /// 12-point lattice.
    pub fn new(theorem: TheoremId, f_families: Vec<FamilyRange>) -> Self {
        Self {
            theorem,
            f_families,
            h_set: vec![HFunction::identity()],
            a_range: (0.0, 2.0),
            b_range: (0.0, 2.0),
            alpha_range: (0.25, 3.0),
            p_range: Instance::needs_p(theorem).then_some((1.1, 4.0)),
            budget: 1000,
            seed: 0,
            opts: VerifyOptions { grid_n: 12, ..VerifyOptions::default() },
        }
    }

    fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::Invalid(m));
        if self.theorem == TheoremId::Reduction {
            return bad("reductions are not searchable".into());
        }
        if self.budget == 0 {
            return bad("budget must be at least 1".into());
        }
        if self.f_families.is_empty() {
            return bad("no function families".into());
        }
        if Instance::needs_h(self.theorem) && self.h_set.is_empty() {
            return bad(format!("{} needs at least one h-function", self.theorem));
        }
        if Instance::needs_p(self.theorem) && self.p_range.is_none() {
            return bad(format!("{} needs a p range", self.theorem));
        }
        let mut ranges = vec![("a", self.a_range), ("b", self.b_range), ("alpha", self.alpha_range)];
        if let Some(p) = self.p_range {
            ranges.push(("p", p));
        }
        for fam in &self.f_families {
            if fam.params.len() != fam.kind.param_count() {
                return bad(format!("{:?} takes {} parameters", fam.kind, fam.kind.param_count()));
            }
            ranges.extend(fam.params.iter().map(|&r| ("family parameter", r)));
        }
        for (name, (lo, hi)) in ranges {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return bad(format!("{name} range [{lo}, {hi}] is empty"));
            }
        }
        if !(self.alpha_range.0 > 0.0) {
            return bad("alpha range must be positive".into());
        }
        if self.p_range.is_some_and(|p| !(p.0 > 1.0)) {
            return bad("p range must lie above 1".into());
        }
        if self.a_range.0 >= self.b_range.1 {
            return bad("no a < b is possible".into());
        }
        Ok(())
    }

    fn max_params(&self) -> usize {
        self.f_families.iter().map(|f| f.params.len()).max().unwrap_or(0)
    }

    /// Continuous coordinates `[a, b, α, p?, params...]` and their ranges.
    fn bounds(&self, family: usize) -> Vec<(f64, f64)> {
        let mut r = vec![self.a_range, self.b_range, self.alpha_range];
        r.extend(self.p_range);
        r.extend(self.f_families[family].params.iter().copied());
        r
    }

    fn admissible(&self, x: &Point) -> bool {
        let (a, b, alpha) = (x.coords[0], x.coords[1], x.coords[2]);
        if !(a < b) {
            return false;
        }
        if matches!(self.theorem, TheoremId::FracHadamardConvex | TheoremId::ThmTrapezoid) && a < 0.0 {
            return false;
        }
        if self.theorem == TheoremId::ThmMain {
            let p = x.coords[3];
            if !(alpha * p - p + 1.0 > 0.0) {
                return false;
            }
        }
        true
    }

    fn point(&self, u: &[f64]) -> Point {
        let pick = |v: f64, n: usize| ((v * n as f64) as usize).min(n.saturating_sub(1));
        let family = pick(u[0], self.f_families.len());
        let h = pick(u[1], self.h_set.len().max(1));
        let coords = self.bounds(family).iter().zip(&u[2..]).map(|(&(lo, hi), &v)| lo + (hi - lo) * v).collect();
        Point { family, h, coords }
    }

    fn instance(&self, x: &Point) -> Result<Instance, VerifyError> {
        let interval = Interval::new(x.coords[0], x.coords[1])?;
        let has_p = self.p_range.is_some();
        let params = &x.coords[if has_p { 4 } else { 3 }..];
        let f = self.f_families[x.family].build(params, interval)?;
        Ok(Instance {
            theorem: self.theorem,
            f,
            h: if Instance::needs_h(self.theorem) { self.h_set.get(x.h).cloned() } else { None },
            interval,
            alpha: Instance::needs_alpha(self.theorem).then_some(x.coords[2]),
            p: if has_p && Instance::needs_p(self.theorem) { Some(x.coords[3]) } else { None },
        })
    }

    fn evaluate(&self, x: &Point) -> Outcome {
        if !self.admissible(x) {
            return Outcome { slack: None, report: None };
        }
        let report = self.instance(x).and_then(|inst| inst.run(&self.opts)).ok();
        let slack = report
            .as_ref()
            .filter(|r| r.status != Status::Inapplicable)
            .and_then(InequalityReport::min_slack)
            .map(|s| if s.is_nan() { f64::NEG_INFINITY } else { s });
        Outcome { slack, report }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Point {
    family: usize,
    h: usize,
    coords: Vec<f64>,
}

struct Outcome {
    slack: Option<f64>,
    report: Option<InequalityReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TracePoint {
    pub inputs: ReportInputs,
    #[serde(with = "crate::verify::float")]
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub theorem_id: TheoremId,
    #[serde(with = "crate::verify::float")]
    pub min_slack: f64,
    pub argmin: ReportInputs,
    pub n_evaluated: usize,
    pub n_inapplicable: usize,
    pub trace: Vec<TracePoint>,
    /// The minimizing instance, for re-running the verifier.
    #[serde(skip)]
    pub argmin_instance: Instance,
}

impl SearchResult {
    /// Summary fields that must be identical across runs with the same
    /// space: `(min_slack bits, argmin, n_evaluated, n_inapplicable)`.
    pub fn summary(&self) -> (u64, ReportInputs, usize, usize) {
        (self.min_slack.to_bits(), self.argmin.clone(), self.n_evaluated, self.n_inapplicable)
    }
}

/// Running minimum over evaluations in a fixed order.
struct Best {
    slack: f64,
    point: Option<Point>,
    report: Option<InequalityReport>,
    trace: Vec<TracePoint>,
    n_evaluated: usize,
    n_inapplicable: usize,
}

impl Best {
    fn absorb(&mut self, x: &Point, o: Outcome) -> Option<f64> {
        match o.slack {
            None => {
                self.n_inapplicable += 1;
                None
            }
            Some(s) => {
                self.n_evaluated += 1;
                if self.point.is_none() || s < self.slack {
                    let report = o.report.expect("applicable outcomes carry a report");
                    self.trace.push(TracePoint { inputs: report.inputs.clone(), slack: s });
                    self.slack = s;
                    self.point = Some(x.clone());
                    self.report = Some(report);
                }
                Some(s)
            }
        }
    }
}

/// Samples `budget` admissible instances from a seeded Halton sequence,
/// evaluates them in parallel and returns the smallest slack. Identity
/// checks contribute `-|slack|`.
///
/// With `refine`, a pattern search over the continuous coordinates (step
/// shrink 0.5, at most 60 iterations) starts from each of the 5 best
/// samples; discrete choices stay fixed. Results are independent of the
/// thread count.
pub fn min_slack_search(space: &SearchSpace, refine: bool) -> Result<SearchResult, SearchError> {
    space.validate()?;
    let dim = 5 + space.p_range.is_some() as usize + space.max_params();
    let mut points = Vec::with_capacity(space.budget);
    let mut rejected = 0;
    for u in Halton::new(dim, space.seed) {
        if points.len() == space.budget {
            break;
        }
        let x = space.point(&u);
        if space.admissible(&x) {
            points.push(x);
        } else {
            rejected += 1;
            if rejected >= 10 * space.budget {
                return Err(SearchError::RejectionLimit { rejected });
            }
        }
    }

    let outcomes: Vec<Outcome> = points.par_iter().map(|x| space.evaluate(x)).collect();
    let mut best =
        Best { slack: f64::INFINITY, point: None, report: None, trace: Vec::new(), n_evaluated: 0, n_inapplicable: 0 };
    let mut ranked = Vec::new();
    for (i, (x, o)) in points.iter().zip(outcomes).enumerate() {
        if let Some(s) = best.absorb(x, o) {
            ranked.push((s, i));
        }
    }
    if best.point.is_none() {
        return Err(SearchError::AllInapplicable { n_inapplicable: best.n_inapplicable });
    }

    if refine {
        ranked.sort_by(|l, r| l.0.total_cmp(&r.0).then(l.1.cmp(&r.1)));
        for &(s, i) in ranked.iter().take(REFINE_STARTS) {
            pattern_search(space, points[i].clone(), s, &mut best);
        }
    }

    let report = best.report.expect("checked above");
    Ok(SearchResult {
        theorem_id: space.theorem,
        min_slack: best.slack,
        argmin: report.inputs,
        n_evaluated: best.n_evaluated,
        n_inapplicable: best.n_inapplicable,
        trace: best.trace,
        argmin_instance: space
            .instance(best.point.as_ref().expect("checked above"))
            .expect("the argmin was built once already"),
    })
}

fn pattern_search(space: &SearchSpace, mut x: Point, mut fx: f64, best: &mut Best) {
    let bounds = space.bounds(x.family);
    let mut steps: Vec<f64> = bounds.iter().map(|(lo, hi)| 0.25 * (hi - lo)).collect();
    for _ in 0..REFINE_ITERATIONS {
        let mut polls = Vec::new();
        for (k, &step) in steps.iter().enumerate() {
            if step <= 1e-12 * (bounds[k].1 - bounds[k].0) {
                continue;
            }
            for dir in [-1.0, 1.0] {
                let mut y = x.clone();
                y.coords[k] = (y.coords[k] + dir * step).clamp(bounds[k].0, bounds[k].1);
                if y.coords[k] != x.coords[k] {
                    polls.push(y);
                }
            }
        }
        if polls.is_empty() {
            break;
        }
        let outcomes: Vec<Outcome> = polls.par_iter().map(|y| space.evaluate(y)).collect();
        let mut improved: Option<(f64, usize)> = None;
        for (i, (y, o)) in polls.iter().zip(outcomes).enumerate() {
            if let Some(s) = best.absorb(y, o) {
                if s < fx && improved.is_none_or(|(b, _)| s < b) {
                    improved = Some((s, i));
                }
            }
        }
        match improved {
            Some((s, i)) => {
                fx = s;
                x = polls.swap_remove(i);
            }
            None => steps.iter_mut().for_each(|s| *s *= REFINE_SHRINK),
        }
    }
}

/// Swept parameter of a tightness profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    Alpha,
    P,
    /// Exponent of `h(t) = t^s`.
    S,
}

impl SweepParam {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepParam::Alpha => "alpha",
            SweepParam::P => "p",
            SweepParam::S => "s",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRow {
    pub param: f64,
    pub report: InequalityReport,
}

/// Runs the verifier once per grid value of `sweep`, all other inputs taken
/// from `template`. Rows come back in grid order; invalid or inapplicable
/// points are kept as `inapplicable` rows.
pub fn tightness_profile(
    template: &Instance,
    sweep: SweepParam,
    grid: &[f64],
    opts: &VerifyOptions,
) -> Result<Vec<ProfileRow>, VerifyError> {
    grid.par_iter()
        .map(|&v| {
            let mut inst = template.clone();
            match sweep {
                SweepParam::Alpha => inst.alpha = Some(v),
                SweepParam::P => inst.p = Some(v),
                SweepParam::S => match HFunction::power(v) {
                    Ok(h) => inst.h = Some(h),
                    Err(e) => {
                        let report = invalid_point(&inst, opts, e.to_string());
                        return Ok(ProfileRow { param: v, report });
                    }
                },
            }
            let report = match inst.run(opts) {
                Err(VerifyError::Invalid(msg)) => invalid_point(&inst, opts, msg),
                Err(VerifyError::Quad(e)) if matches!(e, crate::quadcore::QuadError::Domain(_)) => {
                    invalid_point(&inst, opts, e.to_string())
                }
                other => other?,
            };
            Ok(ProfileRow { param: v, report })
        })
        .collect()
}

fn invalid_point(inst: &Instance, opts: &VerifyOptions, msg: String) -> InequalityReport {
    InequalityReport {
        theorem_id: inst.theorem,
        inputs: ReportInputs {
            f: inst.f.spec_text(),
            h: inst.h.as_ref().map(HFunction::spec_text),
            a: inst.interval.a(),
            b: inst.interval.b(),
            alpha: inst.alpha,
            p: inst.p,
            seed: opts.seed,
        },
        sides: Vec::<NamedValue>::new(),
        slacks: Vec::new(),
        status: Status::Inapplicable,
        reason: Some(Reason::new(ReasonCode::HypothesisFailed, msg)),
        quad_error: 0.0,
    }
}
