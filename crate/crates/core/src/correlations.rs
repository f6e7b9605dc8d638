//! Correlation functions of the poissonized Plancherel measure computed
//! three ways: as determinants of a kernel, by exact enumeration of
//! partitions, and by Monte Carlo over RSK samples.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{numeric, Error, Result};
use crate::kernels::LatticeKernel;
use crate::partitions::{dimension, enumerate_partitions, factorial, point_config, sample_poissonized, stream, HalfInteger};
use crate::scalar::Scalar;

/// Largest query size.
pub const MAX_QUERY: usize = 4;

/// Poisson tail mass beyond `n_cut` that [`rho_exact`] tolerates.
pub const TAIL_LIMIT: f64 = 1e-12;

/// Largest `n_cut` the enumeration supports.
pub const MAX_N_CUT: usize = 30;

/// Distinct points `x₁, …, x_k` of `ℤ'`, `k <= 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<HalfInteger>", into = "Vec<HalfInteger>")]
pub struct PointQuery {
    points: Vec<HalfInteger>,
}

impl PointQuery {
    pub fn new(points: Vec<HalfInteger>) -> Result<Self> {
        if points.len() > MAX_QUERY {
            return Err(Error::Invalid(format!("at most {MAX_QUERY} points, got {}", points.len())));
        }
        for (i, a) in points.iter().enumerate() {
            if points[..i].contains(a) {
                return Err(Error::Invalid(format!("repeated point {a}")));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[HalfInteger] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl TryFrom<Vec<HalfInteger>> for PointQuery {
    type Error = Error;
    fn try_from(points: Vec<HalfInteger>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<PointQuery> for Vec<HalfInteger> {
    fn from(q: PointQuery) -> Self {
        q.points
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RhoMethod {
    Det,
    Exact,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoEstimate<T> {
    pub value: T,
    pub stderr: T,
    pub method: RhoMethod,
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det<T: Scalar>(a: &[Vec<T>]) -> T {
    match a.len() {
        0 => T::one(),
        1 => a[0][0],
        n => {
            let mut det = T::zero();
            for j in 0..n {
                let minor: Vec<Vec<T>> =
                    a[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
                let s = if j % 2 == 0 { T::one() } else { -T::one() };
                det += s * a[0][j] * cofactor_det(&minor);
            }
            det
        }
    }
}

/// `ρ_k = det[K(x_i, x_j)]`.
pub fn rho_det<T: Scalar, K: LatticeKernel<T> + ?Sized>(q: &PointQuery, k: &K) -> Result<RhoEstimate<T>> {
    let pts = q.points();
    let a = pts.iter().map(|&x| pts.iter().map(|&y| k.eval(x, y)).collect::<Result<Vec<T>>>()).collect::<Result<Vec<_>>>()?;
    let value = cofactor_det(&a);
    let slack = T::lit(1e-10);
    if !(value >= -slack && value <= T::one() + slack) {
        return Err(numeric("rho_det", format!("determinant {value} is not a probability")));
    }
    Ok(RhoEstimate { value, stderr: T::zero(), method: RhoMethod::Det })
}

/// `e^{-θ} θⁿ/n!`.
pub fn poisson_weight(theta: f64, n: usize) -> f64 {
    if theta == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let ln = -theta + n as f64 * theta.ln() - (1..=n).map(|k| (k as f64).ln()).sum::<f64>();
    ln.exp()
}

/// `Σ_{n > n_cut} e^{-θ} θⁿ/n!`, summed directly so tiny tails keep their relative accuracy.
pub fn poisson_tail(theta: f64, n_cut: usize) -> f64 {
    let mut n = n_cut + 1;
    let mut term = poisson_weight(theta, n);
    let mut tail = 0.0;
    while term > 0.0 && (term > tail * 1e-17 || (n as f64) < theta) {
        tail += term;
        n += 1;
        term *= theta / n as f64;
    }
    tail
}

/// Smallest `n_cut` whose Poisson tail is below [`TAIL_LIMIT`].
pub fn default_n_cut(theta: f64) -> usize {
    (0..).find(|&n| poisson_tail(theta, n) < TAIL_LIMIT).expect("tail eventually vanishes")
}

/// `Σ_{λ ⊢ n, q ⊂ X(λ)} dim²λ / n!`, exactly.
pub fn plancherel_inclusion(q: &PointQuery, n: usize) -> BigRational {
    let num: BigUint = enumerate_partitions(n)
        .iter()
        .filter(|lam| point_config(lam).contains_all(q.points()))
        .map(|lam| {
            let d = dimension(lam);
            &d * &d
        })
        .sum();
    BigRational::new(BigInt::from(num), BigInt::from(factorial(n)))
}

/// `M^θ{λ : q ⊂ X(λ)}` from the partitions of size `<= n_cut`, whose
/// Poisson tail must be below [`TAIL_LIMIT`].
pub fn rho_exact<T: Scalar>(q: &PointQuery, theta: T, n_cut: usize) -> Result<RhoEstimate<T>> {
    let th = theta.to_f64().unwrap_or(f64::NAN);
    if !(th >= 0.0 && th.is_finite()) {
        return Err(Error::Invalid(format!("theta must be nonnegative, got {theta}")));
    }
    if n_cut > MAX_N_CUT {
        return Err(Error::Invalid(format!("n_cut {n_cut} exceeds {MAX_N_CUT}")));
    }
    let tail = poisson_tail(th, n_cut);
    if !(tail < TAIL_LIMIT) {
        return Err(Error::TailTooLarge { n_cut, tail, limit: TAIL_LIMIT });
    }
    let mut value = 0.0;
    for n in 0..=n_cut {
        let w = poisson_weight(th, n);
        if w == 0.0 {
            continue;
        }
        let inner = plancherel_inclusion(q, n);
        if !inner.is_zero() {
            value += w * inner.to_f64().expect("ratio of finite integers");
        }
    }
    Ok(RhoEstimate { value: T::lit(value), stderr: T::zero(), method: RhoMethod::Exact })
}

/// Fraction of `samples` poissonized Plancherel draws whose configuration
/// contains `q`. Sample `i` uses [`stream`]`(seed, i)`, so the count does
/// not depend on how the work is split across threads.
pub fn rho_mc<T: Scalar>(q: &PointQuery, theta: T, samples: usize, seed: u64) -> Result<RhoEstimate<T>> {
    let th = theta.to_f64().unwrap_or(f64::NAN);
    if !(th >= 0.0) {
        return Err(Error::Invalid(format!("theta must be nonnegative, got {theta}")));
    }
    if samples == 0 {
        return Err(Error::Invalid("need at least one sample".into()));
    }
    let hits: usize = if th == 0.0 {
        if q.is_empty() {
            samples
        } else {
            0
        }
    } else {
        (0..samples as u64)
            .into_par_iter()
            .map(|i| sample_poissonized(th, &mut stream(seed, i)).map(|s| usize::from(s.config.contains_all(q.points()))))
            .sum::<Result<usize>>()?
    };
    let p = hits as f64 / samples as f64;
    let stderr = (p * (1.0 - p) / samples as f64).sqrt();
    Ok(RhoEstimate { value: T::lit(p), stderr: T::lit(stderr), method: RhoMethod::Mc })
}

/// `E[d(λ)]`, the expected number of positive points, by enumeration.
pub fn expected_depth(theta: f64, n_cut: usize) -> Result<f64> {
    let tail = poisson_tail(theta, n_cut);
    if !(tail < TAIL_LIMIT) {
        return Err(Error::TailTooLarge { n_cut, tail, limit: TAIL_LIMIT });
    }
    let mut e = 0.0;
    for n in 1..=n_cut {
        let total: BigUint = enumerate_partitions(n)
            .iter()
            .map(|lam| {
                let d = dimension(lam);
                &d * &d * BigUint::from(point_config(lam).len() / 2)
            })
            .sum();
        e += poisson_weight(theta, n) * BigRational::new(BigInt::from(total), BigInt::from(factorial(n))).to_f64().expect("finite");
    }
    Ok(e)
}
