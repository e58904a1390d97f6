use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    verify_frac_hadamard_convex, verify_hadamard_classical, verify_sarikaya_h, verify_thm_main, verify_thm_superadd,
    ExponentPair, InequalityReport, NamedValue, ReportInputs, Status, TheoremId, VerifyError, VerifyOptions,
};
use crate::fracint::{FractionalOrder, Interval};
use crate::hfam::{h_moments, FunctionSpec, HFunction, Moment};

/// Number of random `(f, I, p)` draws per h in [`verify_reductions`].
const DRAWS: usize = 6;

/// Corollary constants computed from the h-moments next to their closed
/// forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryConstants {
    pub s: f64,
    pub q: f64,
    /// `m_alpha / 2` at `α = 1` for `h(t) = t^s`, against `1/(s+1)`.
    pub middle: (f64, f64),
    /// `(∫ t^(sq))^(1/q)`, against `(sq+1)^(-1/q)`.
    pub holder_s: (f64, f64),
    /// `(∫ t^q)^(1/q)`, against `(q+1)^(-1/q)`.
    pub holder_id: (f64, f64),
}

impl CorollaryConstants {
    pub fn max_abs_diff(&self) -> f64 {
        [self.middle, self.holder_s, self.holder_id].iter().map(|(num, exact)| (num - exact).abs()).fold(0.0, f64::max)
    }
}

fn value(m: Moment<f64>) -> Result<f64, VerifyError> {
    m.value().ok_or_else(|| VerifyError::Invalid("moment of a power h diverged".into()))
}

pub fn corollary_constants(s: f64, q: f64, quad_tol: f64) -> Result<CorollaryConstants, VerifyError> {
    let one = FractionalOrder::new(1.0)?;
    let ms = h_moments(&HFunction::power(s)?, one, q, quad_tol)?;
    let mid = h_moments(&HFunction::identity(), one, q, quad_tol)?;
    Ok(CorollaryConstants {
        s,
        q,
        middle: (value(ms.m_alpha)? / 2.0, 1.0 / (s + 1.0)),
        holder_s: (value(ms.mq_full)?.powf(1.0 / q), (s * q + 1.0).powf(-1.0 / q)),
        holder_id: (value(mid.mq_full)?.powf(1.0 / q), (q + 1.0).powf(-1.0 / q)),
    })
}

struct Check<'a> {
    inputs: &'a ReportInputs,
    tol: f64,
}

impl Check<'_> {
    fn compare(&self, general: (&str, f64), closed: (&str, f64), quad_error: f64) -> InequalityReport {
        let slack = general.1 - closed.1;
        let ok = slack.abs() <= self.tol * closed.1.abs().max(1.0) + quad_error;
        InequalityReport {
            theorem_id: TheoremId::Reduction,
            inputs: self.inputs.clone(),
            sides: vec![NamedValue::new(general.0, general.1), NamedValue::new(closed.0, closed.1)],
            slacks: vec![NamedValue::new(format!("{}-{}", general.0, closed.0), slack)],
            status: if ok { Status::Holds } else { Status::Violated },
            reason: None,
            quad_error,
        }
    }

    /// Side-by-side comparison of two reports with equal side counts.
    fn sides(
        &self,
        general: &InequalityReport,
        special: &InequalityReport,
        factor: f64,
        out: &mut Vec<InequalityReport>,
    ) {
        for (g, c) in general.sides.iter().zip(&special.sides) {
            let gname = format!("{}.{}", general.theorem_id, g.name);
            let cname = format!("{}.{}", special.theorem_id, c.name);
            let qe = general.quad_error + factor * special.quad_error;
            out.push(self.compare((&gname, g.value), (&cname, factor * c.value), qe));
        }
    }
}

fn random_convex(rng: &mut ChaCha8Rng, interval: Interval<f64>) -> Result<FunctionSpec<f64>, VerifyError> {
    let f = match rng.gen_range(0..3) {
        0 => FunctionSpec::power(rng.gen_range(1.0..3.0), interval)?,
        1 => {
            let c2: f64 = rng.gen_range(0.1..2.0);
            let v: f64 = rng.gen_range(interval.a()..interval.b());
            let c0: f64 = rng.gen_range(0.0..1.0);
            FunctionSpec::quadratic(c2, -2.0 * c2 * v, c2 * v * v + c0, interval)?
        }
        _ => FunctionSpec::exp(interval)?,
    };
    Ok(f.scaled(rng.gen_range(0.5..2.0)))
}

/// Runs the α = 1 special cases of the general verifiers and compares them
/// with the classical ones and with closed-form constants.
///
/// The returned list holds the general reports themselves followed by one
/// `reduction` report per compared quantity; everything passes when every
/// status is `holds`. Corollary constants are checked on a 5×5 grid of
/// `s ∈ {0.2, ..., 1}` and `q ∈ {1.25, 1.5, 2, 3, 5}`.
pub fn verify_reductions(seed: u64, tol: f64) -> Result<Vec<InequalityReport>, VerifyError> {
    let opts = VerifyOptions { grid_n: 12, seed, ..VerifyOptions::default() };
    let one = FractionalOrder::new(1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    for _ in 0..DRAWS {
        let a: f64 = rng.gen_range(0.0..1.0);
        let interval = Interval::new(a, a + rng.gen_range(0.2..1.5))?;
        let f = random_convex(&mut rng, interval)?;
        let pq = ExponentPair::new(rng.gen_range(1.2..4.0))?;
        let s: f64 = rng.gen_range(0.2..1.0);
        let (fa, fb) = (f.eval(interval.a()), f.eval(interval.b()));
        let sum = fa + fb;
        let q = pq.q();

        // thm_main at α = 1: the middle factor is 2∫h and the Hölder factor
        // is 2 (∫h^q)^(1/q).
        let cases = [
            (HFunction::identity(), 1.0, 2.0 * (q + 1.0).powf(-1.0 / q)),
            (HFunction::constant(1.0)?, 2.0, 2.0),
            (HFunction::power(s)?, 2.0 / (s + 1.0), 2.0 * (s * q + 1.0).powf(-1.0 / q)),
        ];
        for (h, middle, holder) in cases {
            let r = verify_thm_main(&f, &h, interval, one, pq, &opts)?;
            let check = Check { inputs: &r.inputs, tol };
            if r.sides.len() == 3 {
                let qe = r.quad_error;
                out.push(check.compare(("thm_main.moment_bound", r.sides[1].value), ("sum*m1", sum * middle), qe));
                out.push(check.compare(("thm_main.holder_bound", r.sides[2].value), ("sum*holder1", sum * holder), qe));
            }
            out.push(r);
        }

        // fractional chain at α = 1 against the classical chain
        let frac = verify_frac_hadamard_convex(&f, interval, one, &opts)?;
        let classical = verify_hadamard_classical(&f, interval, &opts)?;
        let check = Check { inputs: &frac.inputs, tol };
        check.sides(&frac, &classical, 1.0, &mut out);

        // superadditive bound at α = 1, h = id, against twice the upper
        // part of the h-chain
        let id = HFunction::identity();
        let sup = verify_thm_superadd(&f, &id, interval, one, &opts)?;
        let sar = verify_sarikaya_h(&f, &id, interval, &opts)?;
        if sup.sides.len() == 2 && sar.sides.len() == 3 {
            let check = Check { inputs: &sup.inputs, tol };
            let qe = sup.quad_error + 2.0 * sar.quad_error;
            out.push(check.compare(
                ("thm_superadd.fractional_pair", sup.sides[0].value),
                ("2*sarikaya_h.mean", 2.0 * sar.sides[1].value),
                qe,
            ));
            out.push(check.compare(
                ("thm_superadd.superadditive_bound", sup.sides[1].value),
                ("2*sarikaya_h.trapezoid_h_integral", 2.0 * sar.sides[2].value),
                qe,
            ));
        }
        out.extend([frac, classical, sup, sar]);
    }

    for s in [0.2, 0.4, 0.6, 0.8, 1.0] {
        for q in [1.25, 1.5, 2.0, 3.0, 5.0] {
            let c = corollary_constants(s, q, opts.quad_tol)?;
            let inputs = ReportInputs {
                f: "-".into(),
                h: Some(HFunction::power(s)?.spec_text()),
                a: 0.0,
                b: 1.0,
                alpha: Some(1.0),
                p: Some(q / (q - 1.0)),
                seed,
            };
            let check = Check { inputs: &inputs, tol };
            out.push(check.compare(("m_alpha/2", c.middle.0), ("1/(s+1)", c.middle.1), 0.0));
            out.push(check.compare(("mq_full^(1/q)", c.holder_s.0), ("(sq+1)^(-1/q)", c.holder_s.1), 0.0));
            out.push(check.compare(("mq_full_id^(1/q)", c.holder_id.0), ("(q+1)^(-1/q)", c.holder_id.1), 0.0));
            // printed as an equality; read as 1/2 <= (q+1)^(-1/q)
            let power_mean = (q + 1.0).powf(-1.0 / q);
            let mut r = check.compare(("(q+1)^(-1/q)", power_mean), ("1/2", 0.5), 0.0);
            r.status = if power_mean >= 0.5 { Status::Holds } else { Status::Violated };
            out.push(r);
        }
    }
    Ok(out)
}
