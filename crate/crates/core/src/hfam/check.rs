use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FunctionSpec, HFunction, HfamError};
use crate::fracint::Interval;
use crate::real::{lit, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Sample at which a class check was violated the most.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Witness<T> {
    /// h-convexity defect at `(x, y, λ)`.
    Triple { x: T, y: T, lambda: T },
    /// `f(x) < 0`.
    Negative { x: T },
    /// Superadditivity defect `h(x) + h(y) - h(x + y) > 0`.
    Pair { x: T, y: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassCheckReport<T> {
    /// Largest defect, each scaled by `max(1, magnitude of the terms)`.
    pub max_violation: T,
    pub witness: Option<Witness<T>>,
    pub samples: usize,
    pub verdict: Verdict,
}

impl<T: Real> ClassCheckReport<T> {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

struct Worst<T> {
    violation: T,
    witness: Option<Witness<T>>,
    samples: usize,
}

impl<T: Real> Worst<T> {
    fn new() -> Self {
        Self { violation: T::neg_infinity(), witness: None, samples: 0 }
    }

    fn record(&mut self, violation: T, witness: Witness<T>) {
        self.samples += 1;
        if violation > self.violation {
            self.violation = violation;
            self.witness = Some(witness);
        }
    }

    fn finish(self, tol: T) -> ClassCheckReport<T> {
        let fail = self.violation > tol;
        ClassCheckReport {
            max_violation: self.violation,
            witness: if fail { self.witness } else { None },
            samples: self.samples,
            verdict: if fail { Verdict::Fail } else { Verdict::Pass },
        }
    }
}

fn unit_open<T: Real>(rng: &mut ChaCha8Rng) -> T {
    loop {
        let u: f64 = rng.gen();
        if u > 0.0 {
            return lit(u);
        }
    }
}

fn check_common<T: Real>(grid_n: usize, tol: T) -> Result<(), HfamError<T>> {
    if grid_n < 3 {
        return Err(HfamError::Invalid(format!("grid_n must be at least 3, got {grid_n}")));
    }
    if !(tol > T::zero()) {
        return Err(HfamError::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

fn finite<T: Real>(v: T, what: &str, at: T) -> Result<T, HfamError<T>> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(HfamError::Invalid(format!("{what} is not finite at {at}")))
    }
}

/// Samples the h-convexity defect `f(λx + (1-λ)y) - h(λ)f(x) - h(1-λ)f(y)`.
///
/// The lattice uses `x, y = a + (b-a) i/(grid_n+1)` for `i = 0..=grid_n+1`
/// and `λ = k/(grid_n+1)` for `k = 1..=grid_n`; it is followed by
/// `10 grid_n^3` seeded uniform triples. Refining `grid_n -> 2 grid_n + 1`
/// keeps every earlier sample. Nonnegativity of `f` is checked on the same
/// abscissae.
pub fn check_h_convex<T: Real>(
    f: &FunctionSpec<T>,
    h: &HFunction<T>,
    interval: Interval<T>,
    grid_n: usize,
    tol: T,
    seed: u64,
) -> Result<ClassCheckReport<T>, HfamError<T>> {
    lattice_check(f, h, interval, grid_n, tol, seed, true)
}

/// Plain convexity: the h-convexity lattice with `h(λ) = λ` and no sign
/// requirement on `f`.
pub fn check_convex<T: Real>(
    f: &FunctionSpec<T>,
    interval: Interval<T>,
    grid_n: usize,
    tol: T,
    seed: u64,
) -> Result<ClassCheckReport<T>, HfamError<T>> {
    lattice_check(f, &HFunction::identity(), interval, grid_n, tol, seed, false)
}

fn lattice_check<T: Real>(
    f: &FunctionSpec<T>,
    h: &HFunction<T>,
    interval: Interval<T>,
    grid_n: usize,
    tol: T,
    seed: u64,
    nonneg: bool,
) -> Result<ClassCheckReport<T>, HfamError<T>> {
    check_common(grid_n, tol)?;
    if !f.domain().contains(&interval) {
        return Err(HfamError::Invalid(format!(
            "interval [{}, {}] is outside the domain of {f}",
            interval.a(),
            interval.b()
        )));
    }
    let one = T::one();
    let m = grid_n + 1;
    let xs: Vec<T> = (0..=m).map(|i| interval.lerp(lit(i as f64 / m as f64))).collect();
    let fx = xs.iter().map(|&x| finite(f.eval(x), "f", x)).collect::<Result<Vec<_>, _>>()?;
    let mut worst = Worst::new();

    let negativity = |worst: &mut Worst<T>, x: T, v: T| {
        if !nonneg {
            return;
        }
        worst.record(-v / one.max(v.abs()), Witness::Negative { x });
    };
    let defect = |worst: &mut Worst<T>, x: T, y: T, lambda: T, fx: T, fy: T| -> Result<(), HfamError<T>> {
        let hl = finite(h.eval(lambda), "h", lambda)?;
        let hr = finite(h.eval(one - lambda), "h", one - lambda)?;
        let z = lambda * x + (one - lambda) * y;
        let fz = finite(f.eval(z), "f", z)?;
        let lhs_rhs = fz - hl * fx - hr * fy;
        let scale = one.max(fz.abs() + (hl * fx).abs() + (hr * fy).abs());
        worst.record(lhs_rhs / scale, Witness::Triple { x, y, lambda });
        Ok(())
    };

    for (&x, &v) in xs.iter().zip(&fx) {
        negativity(&mut worst, x, v);
    }
    for k in 1..=grid_n {
        let lambda: T = lit(k as f64 / m as f64);
        for (i, &x) in xs.iter().enumerate() {
            for (j, &y) in xs.iter().enumerate() {
                defect(&mut worst, x, y, lambda, fx[i], fx[j])?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 * grid_n.pow(3) {
        let x = interval.lerp(lit(rng.gen::<f64>()));
        let y = interval.lerp(lit(rng.gen::<f64>()));
        let lambda = unit_open::<T>(&mut rng);
        let vx = finite(f.eval(x), "f", x)?;
        let vy = finite(f.eval(y), "f", y)?;
        negativity(&mut worst, x, vx);
        defect(&mut worst, x, y, lambda, vx, vy)?;
    }
    Ok(worst.finish(tol))
}

/// Samples `h(x) + h(y) - h(x + y)` over pairs with `x, y, x + y` in `J`:
/// the interior lattice `lo + (hi-lo) i/(grid_n+1)` and `10 grid_n^2`
/// seeded uniform pairs.
pub fn check_superadditive<T: Real>(
    h: &HFunction<T>,
    j: Interval<T>,
    grid_n: usize,
    tol: T,
    seed: u64,
) -> Result<ClassCheckReport<T>, HfamError<T>> {
    check_common(grid_n, tol)?;
    let one = T::one();
    let m = grid_n + 1;
    let inside = |s: T| s >= j.a() && s <= j.b();
    let mut worst = Worst::new();
    let pair = |worst: &mut Worst<T>, x: T, y: T| -> Result<(), HfamError<T>> {
        if !inside(x + y) {
            return Ok(());
        }
        let hx = finite(h.eval(x), "h", x)?;
        let hy = finite(h.eval(y), "h", y)?;
        let hs = finite(h.eval(x + y), "h", x + y)?;
        let scale = one.max(hx.abs() + hy.abs() + hs.abs());
        worst.record((hx + hy - hs) / scale, Witness::Pair { x, y });
        Ok(())
    };
    let xs: Vec<T> = (1..m).map(|i| j.lerp(lit(i as f64 / m as f64))).collect();
    for &x in &xs {
        for &y in &xs {
            pair(&mut worst, x, y)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 * grid_n.pow(2) {
        let x = j.lerp(unit_open::<T>(&mut rng));
        let y = j.lerp(unit_open::<T>(&mut rng));
        pair(&mut worst, x, y)?;
    }
    if worst.samples == 0 {
        return Err(HfamError::Invalid("no sample pair has its sum inside J".into()));
    }
    Ok(worst.finish(tol))
}
