use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::scalar::{cplx, creal, gamma_pole, gamma_pole_c, parity_sign, Cplx, Scalar};

/// Stirling coefficients B_{2k} / (2k (2k-1)).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Digamma asymptotic coefficients B_{2k} / (2k).
const DIGAMMA_ASY: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Arguments are shifted up to at least this before the asymptotic series.
const SHIFT_TO: f64 = 10.0;

/// `ln|Γ(x)|` together with the sign of `Γ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGamma<T> {
    pub ln_abs: T,
    pub sign: T,
}

impl<T: Scalar> LogGamma<T> {
    pub fn value(&self) -> T {
        self.sign * self.ln_abs.exp()
    }
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi<T: Scalar>(x: T) -> T {
    let n = x.round();
    let r = x - n;
    let s = (T::PI() * r).sin();
    if r.is_zero() {
        return T::zero();
    }
    if n.to_i64().is_some_and(|n| n.rem_euclid(2) == 1) {
        -s
    } else {
        s
    }
}

/// `cos(πx)` with exact zeros at the half-integers.
pub fn cos_pi<T: Scalar>(x: T) -> T {
    let n = x.round();
    let r = x - n;
    let c = if r.abs() == T::lit(0.5) { T::zero() } else { (T::PI() * r).cos() };
    if n.to_i64().is_some_and(|n| n.rem_euclid(2) == 1) {
        -c
    } else {
        c
    }
}

/// `sin(πz)` for complex `z`, built from [`sin_pi`] and [`cos_pi`] so that it
/// vanishes exactly at real integers.
pub fn sin_pi_complex<T: Scalar>(z: Cplx<T>) -> Cplx<T> {
    let pb = T::PI() * z.im;
    cplx(sin_pi(z.re) * pb.cosh(), cos_pi(z.re) * pb.sinh())
}

fn small_factorial_ln<T: Scalar>(n: i64) -> T {
    let mut acc = T::one();
    for k in 2..=n {
        acc *= T::from_int(k);
    }
    acc.ln()
}

fn stirling_tail<T: Scalar>(w: T) -> T {
    let w2 = w * w;
    let mut pow = w;
    let mut acc = T::zero();
    for c in STIRLING {
        acc += T::lit(c) / pow;
        pow *= w2;
    }
    acc
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`.
pub fn ln_gamma<T: Scalar>(x: T) -> Result<LogGamma<T>> {
    if x.is_nan() {
        return Err(domain("ln_gamma", "NaN argument"));
    }
    if let Some(n) = gamma_pole(x) {
        return Err(domain("ln_gamma", format!("pole at {n}")));
    }
    let one = T::one();
    if let Some(n) = crate::scalar::as_integer(x) {
        if (1..=30).contains(&n) {
            return Ok(LogGamma { ln_abs: small_factorial_ln(n - 1), sign: one });
        }
    }
    if x < T::zero() {
        // Γ(x) Γ(1-x) = π / sin(πx)
        let s = sin_pi(x);
        let refl = ln_gamma(one - x)?;
        return Ok(LogGamma {
            ln_abs: T::PI().ln() - s.abs().ln() - refl.ln_abs,
            sign: s.signum(),
        });
    }
    let (w, shift_ln) = shift_real(x);
    let half = T::lit(0.5);
    let ln_abs = (w - half) * w.ln() - w + half * (T::TAU()).ln() + stirling_tail(w) - shift_ln;
    Ok(LogGamma { ln_abs, sign: one })
}

fn shift_real<T: Scalar>(x: T) -> (T, T) {
    let target = T::lit(SHIFT_TO);
    let mut w = x;
    let mut prod = T::one();
    while w < target {
        prod *= w;
        w += T::one();
    }
    (w, prod.ln())
}

/// `Γ(x)`; errors at the poles.
pub fn gamma<T: Scalar>(x: T) -> Result<T> {
    Ok(ln_gamma(x)?.value())
}

/// `1/Γ(x)`, an entire function: exactly zero at `0, -1, -2, …`.
pub fn reciprocal_gamma<T: Scalar>(x: T) -> T {
    if gamma_pole(x).is_some() {
        return T::zero();
    }
    match ln_gamma(x) {
        Ok(lg) => lg.sign * (-lg.ln_abs).exp(),
        Err(_) => T::nan(),
    }
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)`; errors at the poles.
pub fn digamma<T: Scalar>(x: T) -> Result<T> {
    if x.is_nan() {
        return Err(domain("digamma", "NaN argument"));
    }
    if let Some(n) = gamma_pole(x) {
        return Err(domain("digamma", format!("pole at {n}")));
    }
    if x < T::zero() {
        // ψ(x) = ψ(1-x) - π cot(πx)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma(T::one() - x)? - T::PI() * cot);
    }
    let target = T::lit(SHIFT_TO);
    let mut w = x;
    let mut acc = T::zero();
    while w < target {
        acc += T::one() / w;
        w += T::one();
    }
    let w2 = w * w;
    let mut pow = w2;
    let mut tail = T::zero();
    for c in DIGAMMA_ASY {
        tail += T::lit(c) / pow;
        pow *= w2;
    }
    Ok(w.ln() - T::lit(0.5) / w - tail - acc)
}

/// `ψ(x)/Γ(x) = -d/dx (1/Γ(x))`, continued through the poles of Γ where it
/// takes the value `-(-1)^m m!` at `x = -m`.
pub fn digamma_over_gamma<T: Scalar>(x: T) -> T {
    if let Some(n) = gamma_pole(x) {
        let m = -n;
        let mut fact = T::one();
        for k in 2..=m {
            fact *= T::from_int(k);
        }
        return -parity_sign::<T>(m) * fact;
    }
    match digamma(x) {
        Ok(psi) => psi * reciprocal_gamma(x),
        Err(_) => T::nan(),
    }
}

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer<T: Scalar>(a: T, k: u32) -> T {
    let mut acc = T::one();
    let mut t = a;
    for _ in 0..k {
        acc *= t;
        t += T::one();
    }
    acc
}

/// Complex rising factorial.
pub fn pochhammer_complex<T: Scalar>(a: Cplx<T>, k: u32) -> Cplx<T> {
    let mut acc = Cplx::one();
    let mut t = a;
    for _ in 0..k {
        acc *= t;
        t += T::one();
    }
    acc
}

/// `ln|(a)_k|`, switching to a log-Gamma difference for long products.
pub fn ln_abs_pochhammer_complex<T: Scalar>(a: Cplx<T>, k: u32) -> Result<T> {
    if k <= 30 {
        return Ok(pochhammer_complex(a, k).norm().ln());
    }
    let kk = creal(T::from_int(k as i64));
    Ok((ln_gamma_complex(a + kk)? - ln_gamma_complex(a)?).re)
}

/// A logarithm of `Γ(z)` for complex `z`. The real part is `ln|Γ(z)|`; the
/// imaginary part is fixed only modulo `2π`, which is irrelevant after
/// exponentiation.
///
/// Uses the Stirling series after shifting `Re z` past 10, and the
/// reflection formula for `Re z < 1/2`.
pub fn ln_gamma_complex<T: Scalar>(z: Cplx<T>) -> Result<Cplx<T>> {
    if z.re.is_nan() || z.im.is_nan() {
        return Err(domain("ln_gamma_complex", "NaN argument"));
    }
    if let Some(n) = gamma_pole_c(z) {
        return Err(domain("ln_gamma_complex", format!("pole at {n}")));
    }
    let half = T::lit(0.5);
    if z.re < half {
        let s = sin_pi_complex(z);
        let refl = ln_gamma_complex(Cplx::<T>::one() - z)?;
        return Ok(creal(T::PI().ln()) - s.ln() - refl);
    }
    let target = T::lit(SHIFT_TO);
    let mut w = z;
    let mut prod = Cplx::<T>::one();
    while w.re < target {
        prod *= w;
        w += T::one();
    }
    let w2 = w * w;
    let mut pow = w;
    let mut tail = Cplx::<T>::zero();
    for c in STIRLING {
        tail += creal(T::lit(c)) / pow;
        pow *= w2;
    }
    Ok((w - half) * w.ln() - w + creal(half * T::TAU().ln()) + tail - prod.ln())
}

/// Below this imaginary part (relative to `max(1, |Re z|)`) the first-order
/// expansion about the real axis is exact to rounding. Used so that complex
/// steps survive the `±π` phase of negative Γ values.
fn near_real<T: Scalar>(z: Cplx<T>) -> bool {
    z.im.abs() <= T::epsilon().sqrt() * T::lit(1e-2) * z.re.abs().max(T::one())
}

/// `Γ(z)` for complex `z`.
pub fn gamma_complex<T: Scalar>(z: Cplx<T>) -> Result<Cplx<T>> {
    if z.im.is_zero() {
        return Ok(creal(gamma(z.re)?));
    }
    if near_real(z) && gamma_pole(z.re.round()).is_none() {
        let g = gamma(z.re)?;
        return Ok(cplx(g, z.im * g * digamma(z.re)?));
    }
    Ok(ln_gamma_complex(z)?.exp())
}

/// `1/Γ(z)` for complex `z`; exactly zero at the poles of Γ.
pub fn reciprocal_gamma_complex<T: Scalar>(z: Cplx<T>) -> Cplx<T> {
    if z.im.is_zero() {
        return creal(reciprocal_gamma(z.re));
    }
    if near_real(z) {
        // d(1/Γ)/dx = -ψ/Γ, finite through the poles
        return cplx(reciprocal_gamma(z.re), -z.im * digamma_over_gamma(z.re));
    }
    match ln_gamma_complex(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => cplx(T::nan(), T::nan()),
    }
}
