use std::any::{Any, TypeId};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use super::{gamma, QuadError};
use crate::real::{lit, Real};

const NEWTON_MAX_ITER: usize = 100;

/// Gauss-type rule on `[-1, 1]` against the weight
/// `(1 - x)^a_exp * (1 + x)^b_exp`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    jacobi_exponents: (T, T),
}

impl<T: Real> QuadratureRule<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn jacobi_exponents(&self) -> (T, T) {
        self.jacobi_exponents
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `sum_i w_i g(x_i)`, i.e. the weighted integral of `g` over `[-1, 1]`.
    pub fn apply<F: Fn(T) -> T>(&self, g: F) -> T {
        self.nodes.iter().zip(&self.weights).fold(T::zero(), |acc, (&x, &w)| acc + w * g(x))
    }

    pub fn iter(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Total mass `∫_{-1}^{1} (1-x)^a (1+x)^b dx = 2^{a+b+1} Γ(a+1)Γ(b+1)/Γ(a+b+2)`.
pub fn jacobi_mass<T: Real>(a_exp: T, b_exp: T) -> Result<T, QuadError<T>> {
    let one = T::one();
    let two: T = lit(2.0);
    Ok(two.powf(a_exp + b_exp + one) * gamma(a_exp + one)? * gamma(b_exp + one)? / gamma(a_exp + b_exp + two)?)
}

/// Jacobi polynomials P_n^{(a,b)}(z) and P_{n-1}^{(a,b)}(z) by the
/// three-term recurrence.
fn jacobi_pair<T: Real>(n: usize, a: T, b: T, z: T) -> (T, T) {
    let one = T::one();
    let two: T = lit(2.0);
    if n == 0 {
        return (one, T::zero());
    }
    let ab = a + b;
    let mut p_prev = one;
    let mut p = (a - b + (ab + two) * z) / two;
    for j in 2..=n {
        let jf: T = lit(j as f64);
        let c = two * jf + ab;
        let a1 = two * jf * (jf + ab) * (c - two);
        let b1 = (c - one) * (a * a - b * b + c * (c - two) * z);
        let c1 = two * (jf - one + a) * (jf - one + b) * c;
        let next = (b1 * p - c1 * p_prev) / a1;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// P_n, P_{n-1} and dP_n/dz, the derivative taken from the shifted family
/// d/dz P_n^{(a,b)} = (n+a+b+1)/2 P_{n-1}^{(a+1,b+1)} to avoid the
/// cancellation of the (1 - z^2) form near the endpoints.
///
/// The forward recurrence loses accuracy near z = -1, so negative arguments
/// go through the reflection P_n^{(a,b)}(z) = (-1)^n P_n^{(b,a)}(-z).
fn jacobi_eval<T: Real>(n: usize, a: T, b: T, z: T) -> (T, T, T) {
    if z < T::zero() {
        let (p, p_prev, dp) = jacobi_eval_upper(n, b, a, -z);
        let sign = if n.is_multiple_of(2) { T::one() } else { -T::one() };
        return (sign * p, -sign * p_prev, -sign * dp);
    }
    jacobi_eval_upper(n, a, b, z)
}

fn jacobi_eval_upper<T: Real>(n: usize, a: T, b: T, z: T) -> (T, T, T) {
    let one = T::one();
    let (p, p_prev) = jacobi_pair(n, a, b, z);
    let (shifted, _) = jacobi_pair(n - 1, a + one, b + one, z);
    let dp = (lit::<T>(n as f64) + a + b + one) / lit(2.0) * shifted;
    (p, p_prev, dp)
}

/// n-point Gauss-Jacobi rule for the weight `(1-x)^a_exp (1+x)^b_exp`.
///
/// Nodes are the zeros of P_n^{(a,b)}, found by Newton iteration with
/// deflation against the zeros already located, starting from the cosine
/// (Chebyshev-type) asymptotic guesses. Weights use
/// w = 2^{a+b+1} Γ(n+a+1)Γ(n+b+1) / (Γ(n+a+b+1) n! (1-x^2) P_n'(x)^2),
/// with the Gamma ratio built by recurrence in `n`.
pub fn gauss_jacobi<T: Real>(n: usize, a_exp: T, b_exp: T) -> Result<QuadratureRule<T>, QuadError<T>> {
    let one = T::one();
    let two: T = lit(2.0);
    if n == 0 {
        return Err(QuadError::Domain("rule order must be at least 1".into()));
    }
    if !(a_exp > -one && b_exp > -one) || !a_exp.is_finite() || !b_exp.is_finite() {
        return Err(QuadError::Domain(format!("Jacobi exponents must exceed -1, got ({a_exp}, {b_exp})")));
    }
    let tol = lit::<T>(1e-14).max(T::epsilon() * lit(16.0));
    let nf: T = lit(n as f64);
    let ab = a_exp + b_exp;

    // Γ(n+a)Γ(n+b) / (Γ(n+1)Γ(n+a+b+1)) by recurrence from n = 1.
    let mut ratio = gamma(one + a_exp)? * gamma(one + b_exp)? / gamma(two + ab)?;
    for k in 1..n {
        let kf: T = lit(k as f64);
        ratio = ratio * (kf + a_exp) * (kf + b_exp) / ((kf + one) * (kf + ab + one));
    }
    let weight_scale = ratio * (nf + a_exp) * (nf + b_exp) * two.powf(ab + one);

    let mut nodes: Vec<T> = Vec::with_capacity(n);
    let mut weights: Vec<T> = Vec::with_capacity(n);
    for i in 1..=n {
        let theta = T::PI() * (lit::<T>(i as f64 - 0.25) + a_exp / two) / (nf + (ab + one) / two);
        let mut z = theta.cos();
        let mut converged = false;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, _, dp) = jacobi_eval(n, a_exp, b_exp, z);
            let deflation = nodes.iter().fold(T::zero(), |acc, &r| acc + one / (z - r));
            let step = p / (dp - p * deflation);
            z = z - step;
            if !z.is_finite() {
                break;
            }
            if step.abs() <= tol {
                converged = true;
                break;
            }
        }
        if !converged || !(z > -one && z < one) {
            return Err(QuadError::RootFinding { order: n, index: i });
        }
        let (_, _, dp) = jacobi_eval(n, a_exp, b_exp, z);
        nodes.push(z);
        weights.push(weight_scale / ((one - z) * (one + z) * dp * dp));
    }

    let mut pairs: Vec<(T, T)> = nodes.into_iter().zip(weights).collect();
    pairs.sort_by(|l, r| l.0.partial_cmp(&r.0).expect("finite nodes"));
    let strictly_increasing = pairs.windows(2).all(|w| w[0].0 < w[1].0);
    if !strictly_increasing || pairs.iter().any(|&(_, w)| !(w > T::zero())) {
        return Err(QuadError::RootFinding { order: n, index: 0 });
    }
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(QuadratureRule { nodes, weights, jacobi_exponents: (a_exp, b_exp) })
}

pub fn gauss_legendre<T: Real>(n: usize) -> Result<QuadratureRule<T>, QuadError<T>> {
    gauss_jacobi(n, T::zero(), T::zero())
}

type CacheKey = (TypeId, usize, u64, u64);
type RuleCache = RwLock<HashMap<CacheKey, Arc<dyn Any + Send + Sync>>>;

fn rule_cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared, immutable rule for `(n, a_exp, b_exp)`, built on first use.
///
/// Concurrent callers may race to build the same rule; the first insertion
/// wins and every caller receives that instance.
pub fn cached_rule<T: Real>(n: usize, a_exp: T, b_exp: T) -> Result<Arc<QuadratureRule<T>>, QuadError<T>> {
    let key = (TypeId::of::<T>(), n, a_exp.as_f64().to_bits(), b_exp.as_f64().to_bits());
    if let Some(hit) = rule_cache().read().expect("rule cache poisoned").get(&key) {
        if let Ok(rule) = Arc::clone(hit).downcast::<QuadratureRule<T>>() {
            return Ok(rule);
        }
    }
    let built: Arc<dyn Any + Send + Sync> = Arc::new(gauss_jacobi(n, a_exp, b_exp)?);
    let stored = Arc::clone(rule_cache().write().expect("rule cache poisoned").entry(key).or_insert(built));
    Ok(stored.downcast::<QuadratureRule<T>>().expect("cache key includes the scalar type"))
}
