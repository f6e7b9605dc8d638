use super::{ThetaParams, ZParams};
use crate::error::{domain, Result};
use crate::scalar::{as_integer, Scalar};
use crate::specialfn::{ln_abs_pochhammer_complex, ln_gamma_complex, reciprocal_gamma};

/// The pair `(h_I, h_II)` of a block-form integrable kernel: `h_I` lives on
/// the positive part of the support and `h_II` on the negative part.
pub trait HFunctions<T: Scalar>: Send + Sync {
    fn h_plus(&self, x: T) -> Result<T>;
    fn h_minus(&self, x: T) -> Result<T>;

    /// `h_I(x)` for `x > 0`, `h_II(x)` otherwise.
    fn h(&self, x: T) -> Result<T> {
        if x > T::zero() {
            self.h_plus(x)
        } else {
            self.h_minus(x)
        }
    }
}

impl<T: Scalar, H: HFunctions<T> + ?Sized> HFunctions<T> for &H {
    fn h_plus(&self, x: T) -> Result<T> {
        (**self).h_plus(x)
    }
    fn h_minus(&self, x: T) -> Result<T> {
        (**self).h_minus(x)
    }
}

/// `h_I(x) = η^x/Γ(x+1/2)`, `h_II(x) = η^{-x}/Γ(-x+1/2)`.
#[derive(Debug, Clone, Copy)]
pub struct BesselH<T> {
    pub params: ThetaParams<T>,
}

pub fn h_bessel<T: Scalar>(params: ThetaParams<T>) -> BesselH<T> {
    BesselH { params }
}

impl<T: Scalar> HFunctions<T> for BesselH<T> {
    fn h_plus(&self, x: T) -> Result<T> {
        Ok((x * self.params.eta.ln()).exp() * reciprocal_gamma(x + T::lit(0.5)))
    }
    fn h_minus(&self, x: T) -> Result<T> {
        self.h_plus(-x)
    }
}

/// The z-measure pair on `ℤ'`, evaluated in log-space.
#[derive(Debug, Clone, Copy)]
pub struct ZMeasureH<T> {
    pub params: ZParams<T>,
}

pub fn h_zmeasure<T: Scalar>(params: ZParams<T>) -> Result<ZMeasureH<T>> {
    params.validate()?;
    Ok(ZMeasureH { params })
}

fn lattice_index<T: Scalar>(x: T) -> Result<u32> {
    match as_integer(x - T::lit(0.5)) {
        Some(k) if k >= 0 => Ok(k as u32),
        _ => Err(domain("h_zmeasure", format!("{x} is not a point of the half-integer lattice on this side"))),
    }
}

impl<T: Scalar> ZMeasureH<T> {
    /// `ln h` at `|x| = k + 1/2` on the side selected by `sign` (`+1` or `-1`).
    fn ln_h(&self, k: u32, sign: T) -> Result<T> {
        let p = &self.params;
        let half = T::lit(0.5);
        let x_abs = T::from_int(k as i64) + half;
        let one = T::one();
        let (a, b) = (p.z * sign + one, p.z_prime * sign + one);
        let ln_poch = ln_abs_pochhammer_complex(a, k)? + ln_abs_pochhammer_complex(b, k)?;
        let lg = ln_gamma_complex(crate::scalar::Cplx::new(x_abs + half, T::zero()))?.re;
        Ok(T::lit(0.25) * p.zz().ln() + half * x_abs * p.xi.ln() + sign * half * p.zsum() * (one - p.xi).ln()
            + half * ln_poch
            - lg)
    }
}

impl<T: Scalar> HFunctions<T> for ZMeasureH<T> {
    fn h_plus(&self, x: T) -> Result<T> {
        Ok(self.ln_h(lattice_index(x)?, T::one())?.exp())
    }
    fn h_minus(&self, x: T) -> Result<T> {
        Ok(self.ln_h(lattice_index(-x)?, -T::one())?.exp())
    }
}

/// The continuous pair on `ℝ₊ ⊔ ℝ₋`:
/// `h_I(x) = (zz')^{1/4} x^{(z+z')/2} e^{-x/2} / √(Γ(z+1)Γ(z'+1))` and its mirror.
#[derive(Debug, Clone, Copy)]
pub struct WhittakerH<T> {
    pub params: ZParams<T>,
}

pub fn h_whittaker_continuous<T: Scalar>(params: ZParams<T>) -> Result<WhittakerH<T>> {
    params.validate()?;
    Ok(WhittakerH { params })
}

impl<T: Scalar> WhittakerH<T> {
    fn ln_h(&self, x_abs: T, sign: T) -> Result<T> {
        let p = &self.params;
        let half = T::lit(0.5);
        let one = crate::scalar::Cplx::new(T::one(), T::zero());
        let lg = ln_gamma_complex(p.z * sign + one)?.re + ln_gamma_complex(p.z_prime * sign + one)?.re;
        Ok(T::lit(0.25) * p.zz().ln() - half * lg + sign * half * p.zsum() * x_abs.ln() - half * x_abs)
    }
}

impl<T: Scalar> HFunctions<T> for WhittakerH<T> {
    fn h_plus(&self, x: T) -> Result<T> {
        if !(x > T::zero()) {
            return Err(domain("h_whittaker", "h_I needs x > 0"));
        }
        Ok(self.ln_h(x, T::one())?.exp())
    }
    fn h_minus(&self, x: T) -> Result<T> {
        if !(x < T::zero()) {
            return Err(domain("h_whittaker", "h_II needs x < 0"));
        }
        Ok(self.ln_h(-x, -T::one())?.exp())
    }
}
