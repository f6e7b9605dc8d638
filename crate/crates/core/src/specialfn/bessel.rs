use num_traits::Zero;

use super::gamma::{digamma, ln_gamma, reciprocal_gamma_complex};
use super::PrecisionPolicy;
use crate::error::{accuracy, domain, Result};
use crate::scalar::{as_integer, creal, gamma_pole, parity_sign, Cplx, Scalar};

/// `J_ν(x)` for real order `ν` and `x ≥ 0` at the default precision.
pub fn bessel_j<T: Scalar>(nu: T, x: T) -> Result<T> {
    bessel_j_with(nu, x, &PrecisionPolicy::default())
}

/// `J_ν(x)` by the ascending series.
///
/// The leading term is formed in log-space; later terms follow from the
/// term ratio `-(x/2)^2 / ((k+1)(ν+k+1))`. Negative integer orders reduce to
/// `(-1)^n J_n`, which is the same series with the Γ-pole terms dropped.
pub fn bessel_j_with<T: Scalar>(nu: T, x: T, policy: &PrecisionPolicy) -> Result<T> {
    check_arg(nu, x, "bessel_j")?;
    if x.is_zero() {
        return bessel_at_zero(nu);
    }
    if let Some(n) = as_integer(nu) {
        if n < 0 {
            return Ok(parity_sign::<T>(-n) * bessel_j_with(-nu, x, policy)?);
        }
    }
    let half_x = x * T::lit(0.5);
    let lg = ln_gamma(nu + T::one())?;
    let lead = lg.sign * (nu * half_x.ln() - lg.ln_abs).exp();
    let q = -half_x * half_x;
    let tol = policy.tol::<T>();

    let mut term = lead;
    let mut sum = T::zero();
    let mut max_term = T::zero();
    for k in 0..policy.max_terms {
        sum += term;
        max_term = max_term.max(term.abs());
        let kf = T::from_int(k as i64);
        let denom = (kf + T::one()) * (nu + kf + T::one());
        let next = term * q / denom;
        let shrinking = (q / denom).abs() < T::one() && kf + T::one() > -nu;
        if shrinking && (next.abs() <= tol * sum.abs() || next.abs() <= T::epsilon() * T::epsilon() * max_term) {
            return Ok(sum + next);
        }
        term = next;
    }
    Err(accuracy("bessel_j", format!("series did not converge in {} terms", policy.max_terms)))
}

fn check_arg<T: Scalar>(nu: T, x: T, func: &'static str) -> Result<()> {
    if nu.is_nan() || x.is_nan() {
        return Err(domain(func, "NaN input"));
    }
    if x < T::zero() {
        return Err(domain(func, "argument must be nonnegative"));
    }
    Ok(())
}

fn bessel_at_zero<T: Scalar>(nu: T) -> Result<T> {
    if nu.is_zero() {
        Ok(T::one())
    } else if nu > T::zero() || as_integer(nu).is_some() {
        Ok(T::zero())
    } else {
        Err(domain("bessel_j", "J_nu(0) is infinite for negative non-integer order"))
    }
}

/// `∂J_ν(x)/∂ν` at the default precision.
pub fn bessel_j_dnu<T: Scalar>(nu: T, x: T) -> Result<T> {
    bessel_j_dnu_with(nu, x, &PrecisionPolicy::default())
}

/// `∂J_ν(x)/∂ν` by term-wise differentiation of the ascending series.
///
/// Term `k` contributes `(-1)^k (x/2)^{ν+2k}/k! · (ln(x/2)/Γ(s) - ψ(s)/Γ(s))`
/// with `s = ν+k+1`; at Γ-poles `s = -m` the first product vanishes and the
/// second is replaced by its limit `-(-1)^m m!`.
pub fn bessel_j_dnu_with<T: Scalar>(nu: T, x: T, policy: &PrecisionPolicy) -> Result<T> {
    check_arg(nu, x, "bessel_j_dnu")?;
    if x.is_zero() {
        if nu > T::zero() {
            return Ok(T::zero());
        }
        return Err(domain("bessel_j_dnu", "derivative at x = 0 requires positive order"));
    }
    let ln_half_x = (x * T::lit(0.5)).ln();
    let q = (x * T::lit(0.5)).powi(2);
    let tol = policy.tol::<T>();
    let mut sum = T::zero();
    let mut max_term = T::zero();
    let mut ln_fact = T::zero();
    for k in 0..policy.max_terms {
        let kf = T::from_int(k as i64);
        if k > 0 {
            ln_fact += kf.ln();
        }
        let s = nu + kf + T::one();
        let base = (nu + kf + kf) * ln_half_x - ln_fact;
        let term = if let Some(pole) = gamma_pole(s) {
            let m = -pole;
            let lm = ln_gamma(T::from_int(m + 1))?.ln_abs;
            // -ψ(s)/Γ(s) -> (-1)^m m!
            parity_sign::<T>(k as i64 + m) * (base + lm).exp()
        } else {
            let lg = ln_gamma(s)?;
            let psi = digamma(s)?;
            parity_sign::<T>(k as i64) * lg.sign * (base - lg.ln_abs).exp() * (ln_half_x - psi)
        };
        sum += term;
        max_term = max_term.max(term.abs());
        let shrinking = q / ((kf + T::one()) * (s.abs() + T::one())) < T::one() && kf + T::one() > -nu;
        if k > 0 && shrinking && (term.abs() <= tol * sum.abs() || term.abs() <= T::epsilon() * T::epsilon() * max_term) {
            return Ok(sum);
        }
    }
    Err(accuracy("bessel_j_dnu", format!("series did not converge in {} terms", policy.max_terms)))
}

/// `J_ν(x)` for complex order `ν` and real `x > 0` at the default precision.
pub fn bessel_j_complex<T: Scalar>(nu: Cplx<T>, x: T) -> Result<Cplx<T>> {
    bessel_j_complex_with(nu, x, &PrecisionPolicy::default())
}

/// `J_ν(x)` for complex order, by the same ascending series as the real case.
///
/// Uses only holomorphic operations in `ν`, so the result is analytic in the
/// order and safe to probe with a complex step.
pub fn bessel_j_complex_with<T: Scalar>(nu: Cplx<T>, x: T, policy: &PrecisionPolicy) -> Result<Cplx<T>> {
    if nu.im.is_zero() {
        if let Some(n) = as_integer(nu.re) {
            return Ok(creal(bessel_j_with(T::from_int(n), x, policy)?));
        }
    }
    if x.is_nan() || x <= T::zero() {
        return Err(domain("bessel_j_complex", "argument must be positive"));
    }
    let half_x = x * T::lit(0.5);
    let ln_half_x = half_x.ln();
    let one = T::one();
    // Terms with Re(ν+k+1) <= 1 are formed directly: a ratio step across a
    // Γ-pole would drop the O(Im ν) part that carries the order derivative.
    let direct = |k: i64, ln_fact: T| {
        let kf = T::from_int(k);
        ((nu + kf + kf) * ln_half_x - ln_fact).exp() * reciprocal_gamma_complex(nu + kf + one) * parity_sign::<T>(k)
    };
    let q = creal(-half_x * half_x);
    let tol = policy.tol::<T>();
    let mut term = direct(0, T::zero());
    let mut sum = Cplx::<T>::zero();
    let mut max_term = T::zero();
    let mut ln_fact = T::zero();
    for k in 0..policy.max_terms {
        sum += term;
        max_term = max_term.max(term.norm());
        let kf = T::from_int(k as i64);
        let denom = (nu + kf + one) * (kf + one);
        let ratio = q / denom;
        ln_fact += (kf + one).ln();
        let next = if nu.re + kf + one + one <= one { direct(k as i64 + 1, ln_fact) } else { term * ratio };
        if ratio.norm() < one && kf + one > -nu.re && (next.norm() <= tol * sum.norm() || next.norm() <= T::epsilon() * T::epsilon() * max_term) {
            return Ok(sum + next);
        }
        term = next;
    }
    Err(accuracy("bessel_j_complex", format!("series did not converge in {} terms", policy.max_terms)))
}
