use super::{cached_rule, IntegralEstimate, QuadError};
use crate::real::{lit, Real};

/// Cap on the number of subintervals held by the adaptive drivers.
pub const MAX_SUBDIVISIONS: usize = 2000;

/// Subintervals narrower than this fraction of `b - a` are never split; an
/// error estimate that is still above tolerance there means the integrand is
/// not resolvable (typically an endpoint singularity or divergence).
const MIN_WIDTH_FRACTION: f64 = 1.0 / (1u64 << 40) as f64;

/// Node counts of the embedded Gauss-Jacobi pair used on the singular piece.
const JACOBI_COARSE: usize = 16;
const JACOBI_FINE: usize = 32;

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Which endpoint carries the algebraic factor `|end - t|^mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularEnd {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    Smooth,
    Folded(SingularEnd),
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    piece: Piece,
    value: T,
    error: T,
}

fn finite<T: Real>(v: T, at: T) -> Result<T, QuadError<T>> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(QuadError::NonFinite { at })
    }
}

/// 15-point Kronrod / 7-point Gauss pair on `[lo, hi]` with the QUADPACK
/// error rescaling.
fn kronrod15<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> Result<(T, T), QuadError<T>> {
    let half: T = lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let f_center = finite(f(center), center)?;
    let mut res_gauss = f_center * lit(WG[3]);
    let mut res_kronrod = f_center * lit(WGK[7]);
    let mut res_abs = res_kronrod.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let x1 = center - half_len * lit(XGK[j]);
        let x2 = center + half_len * lit(XGK[j]);
        let f1 = finite(f(x1), x1)?;
        let f2 = finite(f(x2), x2)?;
        fv1[j] = f1;
        fv2[j] = f2;
        let wk: T = lit(WGK[j]);
        res_kronrod = res_kronrod + wk * (f1 + f2);
        res_abs = res_abs + wk * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss = res_gauss + lit::<T>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_kronrod * half;
    let mut res_asc = lit::<T>(WGK[7]) * (f_center - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + lit::<T>(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let abs_half = half_len.abs();
    let value = res_kronrod * half_len;
    res_abs = res_abs * abs_half;
    res_asc = res_asc * abs_half;
    let mut err = ((res_kronrod - res_gauss) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (lit::<T>(200.0) * err / res_asc).powf(lit(1.5));
        err = if scale < T::one() { res_asc * scale } else { res_asc };
    }
    let floor = lit::<T>(50.0) * T::epsilon() * res_abs;
    Ok((value, err.max(floor)))
}

/// Integral of `|end - t|^mu g(t)` over `[lo, hi]` where `end` is `lo` or
/// `hi`, via an embedded pair of Gauss-Jacobi rules.
fn folded<T: Real, G: Fn(T) -> T>(g: &G, lo: T, hi: T, mu: T, end: SingularEnd) -> Result<(T, T), QuadError<T>> {
    let half: T = lit(0.5);
    let (ea, eb) = match end {
        SingularEnd::Right => (mu, T::zero()),
        SingularEnd::Left => (T::zero(), mu),
    };
    let half_len = half * (hi - lo);
    let scale = half_len.powf(mu + T::one());
    let eval_rule = |n: usize| -> Result<(T, T), QuadError<T>> {
        let rule = cached_rule(n, ea, eb)?;
        let mut sum = T::zero();
        let mut abs_sum = T::zero();
        for (x, w) in rule.iter() {
            let t = lo + half_len * (T::one() + x);
            let v = finite(g(t), t)?;
            sum = sum + w * v;
            abs_sum = abs_sum + w * v.abs();
        }
        Ok((sum * scale, abs_sum * scale.abs()))
    };
    let (coarse, _) = eval_rule(JACOBI_COARSE)?;
    let (fine, fine_abs) = eval_rule(JACOBI_FINE)?;
    let floor = lit::<T>(50.0) * T::epsilon() * fine_abs;
    Ok((fine, (fine - coarse).abs().max(floor)))
}

fn check_args<T: Real>(a: T, b: T, tol: T) -> Result<(), QuadError<T>> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(QuadError::Domain(format!("need finite a < b, got [{a}, {b}]")));
    }
    if !(tol > T::zero()) {
        return Err(QuadError::Domain(format!("tolerance must be positive, got {tol}")));
    }
    Ok(())
}

/// Globally adaptive bisection: always splits the segment with the largest
/// error estimate until the total estimate drops below
/// `tol * max(1, |value|)`.
fn adapt<T, E>(a: T, b: T, first: Piece, tol: T, eval: E) -> Result<IntegralEstimate<T>, QuadError<T>>
where
    T: Real,
    E: Fn(Piece, T, T) -> Result<(T, T), QuadError<T>>,
{
    let min_width = (b - a) * lit(MIN_WIDTH_FRACTION);
    let (value, error) = eval(first, a, b)?;
    let mut segments = vec![Segment { lo: a, hi: b, piece: first, value, error }];
    loop {
        let total = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let total_err = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        let best = IntegralEstimate::new(total, total_err, segments.len());
        if total_err <= tol * T::one().max(total.abs()) {
            return Ok(best);
        }
        let (worst_idx, worst) = segments
            .iter()
            .enumerate()
            .max_by(|l, r| l.1.error.partial_cmp(&r.1.error).expect("finite errors"))
            .map(|(i, s)| (i, *s))
            .expect("at least one segment");
        if segments.len() >= MAX_SUBDIVISIONS || worst.hi - worst.lo < min_width {
            return Err(QuadError::NonConvergence { best });
        }
        let mid = lit::<T>(0.5) * (worst.lo + worst.hi);
        let (left_piece, right_piece) = match worst.piece {
            Piece::Smooth => (Piece::Smooth, Piece::Smooth),
            Piece::Folded(SingularEnd::Left) => (worst.piece, Piece::Smooth),
            Piece::Folded(SingularEnd::Right) => (Piece::Smooth, worst.piece),
        };
        let (lv, le) = eval(left_piece, worst.lo, mid)?;
        let (rv, re) = eval(right_piece, mid, worst.hi)?;
        segments[worst_idx] = Segment { lo: worst.lo, hi: mid, piece: left_piece, value: lv, error: le };
        segments.push(Segment { lo: mid, hi: worst.hi, piece: right_piece, value: rv, error: re });
    }
}

/// Adaptive Gauss-Kronrod integration of a smooth integrand over `[a, b]`.
///
/// Integrands with non-integrable or unresolvable endpoint behaviour are
/// refused with [`QuadError::NonConvergence`] (carrying the best estimate)
/// or [`QuadError::NonFinite`]; route algebraic endpoint singularities to
/// [`integrate_singular`].
pub fn integrate<T, F>(f: F, a: T, b: T, tol: T) -> Result<IntegralEstimate<T>, QuadError<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    check_args(a, b, tol)?;
    adapt(a, b, Piece::Smooth, tol, |_, lo, hi| kronrod15(&f, lo, hi))
}

/// Computes `∫_a^b |end - t|^mu f_smooth(t) dt` with `end` the chosen
/// endpoint. The segment touching `end` is integrated with a Gauss-Jacobi
/// rule carrying the algebraic factor as its weight; all other segments use
/// the Kronrod pair on the full integrand.
pub fn integrate_singular<T, F>(
    f_smooth: F,
    a: T,
    b: T,
    mu: T,
    singular_end: SingularEnd,
    tol: T,
) -> Result<IntegralEstimate<T>, QuadError<T>>
where
    T: Real,
    F: Fn(T) -> T,
{
    check_args(a, b, tol)?;
    if !(mu > -T::one()) || !mu.is_finite() {
        return Err(QuadError::Domain(format!("singular exponent must exceed -1, got {mu}")));
    }
    let end = match singular_end {
        SingularEnd::Left => a,
        SingularEnd::Right => b,
    };
    let full = |t: T| {
        let d = (end - t).abs();
        if mu == T::zero() {
            f_smooth(t)
        } else {
            d.powf(mu) * f_smooth(t)
        }
    };
    adapt(a, b, Piece::Folded(singular_end), tol, |piece, lo, hi| match piece {
        Piece::Smooth => kronrod15(&full, lo, hi),
        Piece::Folded(side) => folded(&f_smooth, lo, hi, mu, side),
    })
}
