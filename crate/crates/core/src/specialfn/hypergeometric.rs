use num_traits::{One, Zero};

use super::gamma::ln_gamma_complex;
use super::PrecisionPolicy;
use crate::error::{accuracy, domain, Result};
use crate::scalar::{creal, gamma_pole_c, Cplx, Scalar};

/// `₂F₁(a, b; c; v)` for real parameters and real `v < 1`.
pub fn gauss_2f1<T: Scalar>(a: T, b: T, c: T, v: T) -> Result<T> {
    gauss_2f1_with(a, b, c, v, &PrecisionPolicy::default())
}

pub fn gauss_2f1_with<T: Scalar>(a: T, b: T, c: T, v: T, policy: &PrecisionPolicy) -> Result<T> {
    let r = gauss_2f1_complex_with(creal(a), creal(b), creal(c), v, policy)?;
    Ok(r.re)
}

/// `₂F₁(a, b; c; v)` for complex parameters and real `v < 1`.
pub fn gauss_2f1_complex<T: Scalar>(a: Cplx<T>, b: Cplx<T>, c: Cplx<T>, v: T) -> Result<Cplx<T>> {
    gauss_2f1_complex_with(a, b, c, v, &PrecisionPolicy::default())
}

/// Routing by the position of `v`:
///
/// * `|v| <= 1/2`: the defining series;
/// * `-1 <= v < -1/2`: Pfaff, `(1-v)^{-a} F(a, c-b; c; v/(v-1))`, argument in `[1/3, 1/2)`;
/// * `v < -1`: the connection formula in `1/(1-v)`, argument in `(0, 1/2)`,
///   unless `a - b` is close to an integer, in which case Pfaff with a long series;
/// * `1/2 < v < 1`: the defining series, slow near 1.
///
/// `a` and `b` are put in a canonical order first, so the result is exactly
/// symmetric in them. The routines are holomorphic in the parameters.
pub fn gauss_2f1_complex_with<T: Scalar>(
    a: Cplx<T>,
    b: Cplx<T>,
    c: Cplx<T>,
    v: T,
    policy: &PrecisionPolicy,
) -> Result<Cplx<T>> {
    if v.is_nan() || v >= T::one() {
        return Err(domain("gauss_2f1", "argument must be below 1"));
    }
    if let Some(n) = gamma_pole_c(c) {
        return Err(domain("gauss_2f1", format!("c = {n} is a nonpositive integer")));
    }
    let (a, b) = canonical(a, b);
    let half = T::lit(0.5);
    if v.abs() <= half || v > T::zero() {
        return series(a, b, c, v, policy);
    }
    if v >= -T::one() {
        return pfaff(a, b, c, v, policy);
    }
    let d = a - b;
    let near_integer = (d.re - d.re.round()).abs() < T::lit(1e-2) && d.im.abs() < T::lit(1e-2);
    if near_integer {
        let long = PrecisionPolicy { max_terms: policy.max_terms.max(20_000), ..*policy };
        return pfaff(a, b, c, v, &long);
    }
    connection(a, b, c, v, policy)
}

fn canonical<T: Scalar>(a: Cplx<T>, b: Cplx<T>) -> (Cplx<T>, Cplx<T>) {
    if (a.re, a.im) <= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    }
}

fn pfaff<T: Scalar>(a: Cplx<T>, b: Cplx<T>, c: Cplx<T>, v: T, policy: &PrecisionPolicy) -> Result<Cplx<T>> {
    let one_minus = T::one() - v;
    let pre = (-a * one_minus.ln()).exp();
    Ok(pre * series(a, c - b, c, v / (v - T::one()), policy)?)
}

/// `F(a,b;c;v) = Γ(c)Γ(b-a)/(Γ(b)Γ(c-a)) (1-v)^{-a} F(a, c-b; a-b+1; 1/(1-v)) + (a <-> b)`.
fn connection<T: Scalar>(a: Cplx<T>, b: Cplx<T>, c: Cplx<T>, v: T, policy: &PrecisionPolicy) -> Result<Cplx<T>> {
    let one = Cplx::<T>::one();
    let w = T::one() / (T::one() - v);
    let ln_w = w.ln();
    let mut total = Cplx::zero();
    for (p, q) in [(a, b), (b, a)] {
        let coeff = gamma_ratio(&[c, q - p], &[q, c - p])?;
        if coeff.is_zero() {
            continue;
        }
        let pre = (p * ln_w).exp();
        total += coeff * pre * series(p, c - q, p - q + one, w, policy)?;
    }
    Ok(total)
}

/// `Π Γ(num) / Π Γ(den)`, zero when a denominator argument is a pole.
fn gamma_ratio<T: Scalar>(num: &[Cplx<T>], den: &[Cplx<T>]) -> Result<Cplx<T>> {
    if den.iter().any(|&d| gamma_pole_c(d).is_some()) {
        return Ok(Cplx::zero());
    }
    let mut ln = Cplx::<T>::zero();
    for &n in num {
        ln += ln_gamma_complex(n)?;
    }
    for &d in den {
        ln -= ln_gamma_complex(d)?;
    }
    Ok(ln.exp())
}

/// The defining series, with ratio recurrence. Stops only after two
/// consecutive negligible terms past every small denominator; the geometric
/// tail bound `|next|/(1-|ratio|)` is what has to be negligible.
fn series<T: Scalar>(a: Cplx<T>, b: Cplx<T>, c: Cplx<T>, v: T, policy: &PrecisionPolicy) -> Result<Cplx<T>> {
    let tol = policy.tol::<T>();
    let one = T::one();
    let mut term = Cplx::<T>::one();
    let mut sum = Cplx::<T>::zero();
    let mut quiet = 0;
    for k in 0..policy.max_terms {
        sum += term;
        if term.is_zero() {
            return Ok(sum);
        }
        let kf = T::from_int(k as i64);
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + one)) * v;
        let next = term * ratio;
        let past_poles = kf + one > -c.re;
        if past_poles && ratio.norm() < one && next.norm() <= tol * (one - ratio.norm()) * sum.norm() {
            quiet += 1;
            if quiet == 2 {
                return Ok(sum + next);
            }
        } else {
            quiet = 0;
        }
        term = next;
    }
    Err(accuracy("gauss_2f1", format!("series did not converge in {} terms (v = {v})", policy.max_terms)))
}
