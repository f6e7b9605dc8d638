use num_traits::{One, Zero};

use super::gamma::reciprocal_gamma_complex;
use super::quadrature::integrate;
use super::PrecisionPolicy;
use crate::error::{domain, Result};
use crate::scalar::{cplx, creal, Cplx, Scalar};

const MAX_SEGMENTS: usize = 4000;

/// `W_{κ,μ}(v)` for real parameters and `v > 0`.
pub fn whittaker_w<T: Scalar>(kappa: T, mu: T, v: T) -> Result<T> {
    whittaker_w_with(kappa, mu, v, &PrecisionPolicy::default())
}

pub fn whittaker_w_with<T: Scalar>(kappa: T, mu: T, v: T, policy: &PrecisionPolicy) -> Result<T> {
    if v.is_nan() || v <= T::zero() {
        return Err(domain("whittaker_w", "argument must be positive"));
    }
    Ok(whittaker_w_complex_with(creal(kappa), creal(mu), creal(v), policy)?.re)
}

pub fn whittaker_w_complex<T: Scalar>(kappa: Cplx<T>, mu: Cplx<T>, z: Cplx<T>) -> Result<Cplx<T>> {
    whittaker_w_complex_with(kappa, mu, z, &PrecisionPolicy::default())
}

/// `W_{κ,μ}(z) = e^{-z/2} z^{μ+1/2} U(μ-κ+1/2, 1+2μ, z)` on the principal
/// sheet `|arg z| < π`. `W` is even in `μ`; the representative with
/// `Re μ >= 0` is used.
pub fn whittaker_w_complex_with<T: Scalar>(
    kappa: Cplx<T>,
    mu: Cplx<T>,
    z: Cplx<T>,
    policy: &PrecisionPolicy,
) -> Result<Cplx<T>> {
    let mu = if mu.re < T::zero() { -mu } else { mu };
    let half = T::lit(0.5);
    let a = mu - kappa + half;
    let b = mu * T::lit(2.0) + T::one();
    let u = hypergeometric_u_with(a, b, z, policy)?;
    Ok((-z * half).exp() * ((mu + half) * z.ln()).exp() * u)
}

/// Tricomi's `U(a, b, z)` on the principal sheet.
pub fn hypergeometric_u_complex<T: Scalar>(a: Cplx<T>, b: Cplx<T>, z: Cplx<T>) -> Result<Cplx<T>> {
    hypergeometric_u_with(a, b, z, &PrecisionPolicy::default())
}

/// For `Re a > 0` the Laplace-type integral is used directly. Otherwise the
/// parameter is raised into `(0, 1]` and the contiguous relation
/// `U(a-1) = -(b-2a-z) U(a) - a(a-b+1) U(a+1)` brings it back down.
fn hypergeometric_u_with<T: Scalar>(a: Cplx<T>, b: Cplx<T>, z: Cplx<T>, policy: &PrecisionPolicy) -> Result<Cplx<T>> {
    check_argument(z)?;
    if a.re > T::zero() {
        return u_integral(a, b, z, policy);
    }
    let steps = (T::one() - a.re).floor().to_i64().unwrap_or(0).max(1);
    let top = a + T::from_int(steps);
    let mut upper = u_integral(top + T::one(), b, z, policy)?;
    let mut cur = u_integral(top, b, z, policy)?;
    let mut aa = top;
    let two = T::lit(2.0);
    for _ in 0..steps {
        let lower = -(b - aa * two - z) * cur - aa * (aa - b + T::one()) * upper;
        upper = cur;
        cur = lower;
        aa -= T::one();
    }
    Ok(cur)
}

fn check_argument<T: Scalar>(z: Cplx<T>) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(domain("whittaker_w", "non-finite argument"));
    }
    if z.is_zero() {
        return Err(domain("whittaker_w", "argument zero"));
    }
    if z.im.is_zero() && z.re < T::zero() {
        return Err(domain("whittaker_w", "argument on the branch cut"));
    }
    Ok(())
}

/// `(1/Γ(a)) ∫_0^∞ e^{-zt} t^{a-1} (1+t)^{b-a-1} dt` along the ray `arg t = φ`.
///
/// `φ` rotates `z t` to within `π/4` of the positive axis; for `|arg z| <= π/4`
/// the ray is the real axis. The ray is split at `|t| = 1`: the inner piece
/// absorbs the `t^{a-1}` endpoint behaviour by `τ = w^{1/α}`, the outer piece
/// is mapped to `[0, 1)` with the decay rate as scale.
fn u_integral<T: Scalar>(a: Cplx<T>, b: Cplx<T>, z: Cplx<T>, policy: &PrecisionPolicy) -> Result<Cplx<T>> {
    let quarter_pi = T::FRAC_PI_4();
    let arg = z.arg();
    let phi = if arg.abs() <= quarter_pi { T::zero() } else { -arg.signum() * (arg.abs() - quarter_pi) };
    let dir = cplx(phi.cos(), phi.sin());
    let decay = (z * dir).re;
    let one = T::one();
    let c = b - a - one;
    let am1 = a - one;
    let log_integrand = |tau: T| -> Cplx<T> {
        let t = dir * tau;
        -z * t + am1 * creal(tau.ln()) + c * (Cplx::<T>::one() + t).ln()
    };

    let tol = policy.tol::<T>();
    let tiny = T::min_positive_value();
    let alpha = a.re.min(one);
    let inner = integrate(
        |w: T| {
            if w <= T::zero() {
                return Ok(Cplx::zero());
            }
            let tau = w.powf(one / alpha);
            let t = dir * tau;
            // τ^{a-1} dτ = (1/α) w^{(a-α)/α} dw
            let lg = -z * t + (a - alpha) / alpha * creal(w.ln()) + c * (Cplx::<T>::one() + t).ln();
            Ok(lg.exp() / alpha)
        },
        T::zero(),
        one,
        tiny,
        tol,
        MAX_SEGMENTS,
    )?;
    let outer = integrate(
        |s: T| {
            if s >= one {
                return Ok(Cplx::zero());
            }
            let r = s / (one - s);
            let tau = one + r / decay;
            let jac = one / (decay * (one - s) * (one - s));
            Ok(log_integrand(tau).exp() * jac)
        },
        T::zero(),
        one,
        tiny,
        tol,
        MAX_SEGMENTS,
    )?;
    // dt = e^{iφ} dτ and t^{a-1} = e^{iφ(a-1)} τ^{a-1}
    let rotation = (a * cplx(T::zero(), phi)).exp();
    Ok((inner + outer) * rotation * reciprocal_gamma_complex(a))
}
