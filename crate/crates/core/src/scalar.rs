//! The floating-point abstraction every numerical routine is generic over.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// A real floating-point type usable throughout the crate (`f32` or `f64`).
///
/// Accuracy targets quoted in the documentation assume `f64`; `f32`
/// instantiations compile and run but only reach single precision.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable in scalar type")
    }

    /// Converts an integer into `Self`.
    #[inline]
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over a [`Scalar`].
pub type Cplx<T> = Complex<T>;

#[inline]
pub(crate) fn cplx<T: Scalar>(re: T, im: T) -> Cplx<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn creal<T: Scalar>(re: T) -> Cplx<T> {
    Complex::new(re, T::zero())
}

/// Returns `Some(n)` when `x` is exactly an integer.
#[inline]
pub(crate) fn as_integer<T: Scalar>(x: T) -> Option<i64> {
    if x.is_finite() && x == x.round() {
        x.to_i64()
    } else {
        None
    }
}

/// Returns `Some(-n)` (n >= 0) when `x` is a nonpositive integer, i.e. a pole of Γ.
#[inline]
pub(crate) fn gamma_pole<T: Scalar>(x: T) -> Option<i64> {
    match as_integer(x) {
        Some(n) if n <= 0 => Some(n),
        _ => None,
    }
}

/// Complex counterpart of [`gamma_pole`]: only exactly real arguments can be poles.
#[inline]
pub(crate) fn gamma_pole_c<T: Scalar>(z: Cplx<T>) -> Option<i64> {
    if z.im == T::zero() {
        gamma_pole(z.re)
    } else {
        None
    }
}

#[inline]
pub(crate) fn is_finite_c<T: Scalar>(z: Cplx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `(-1)^n` as a scalar.
#[inline]
pub(crate) fn parity_sign<T: Scalar>(n: i64) -> T {
    if n.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}
