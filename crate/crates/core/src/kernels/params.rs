use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{as_integer, Cplx, Scalar};

/// Poissonization intensity `θ` and `η = √θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaParams<T> {
    pub theta: T,
    pub eta: T,
}

impl<T: Scalar> ThetaParams<T> {
    pub fn new(theta: T) -> Result<Self> {
        if !(theta > T::zero()) || !theta.is_finite() {
            return Err(Error::Invalid(format!("theta must be positive and finite, got {theta}")));
        }
        Ok(Self { theta, eta: theta.sqrt() })
    }

    pub fn from_eta(eta: T) -> Result<Self> {
        Self::new(eta * eta).map(|p| Self { eta, ..p })
    }
}

/// The two parameter families for which `(z+k)(z'+k) > 0` holds for every integer `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ZFamily {
    /// `z' = conj(z)`, `z` not an integer.
    Principal,
    /// `z, z'` real, non-integer, in the same unit interval.
    Complementary,
}

/// Parameters `(z, z', ξ)` of the z-measures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZParams<T> {
    pub family: ZFamily,
    pub z: Cplx<T>,
    pub z_prime: Cplx<T>,
    pub xi: T,
}

impl<T: Scalar> ZParams<T> {
    pub fn principal(z: Cplx<T>, xi: T) -> Result<Self> {
        let p = Self { family: ZFamily::Principal, z, z_prime: z.conj(), xi };
        p.validate()?;
        Ok(p)
    }

    pub fn complementary(z: T, z_prime: T, xi: T) -> Result<Self> {
        let p = Self { family: ZFamily::Complementary, z: Cplx::new(z, T::zero()), z_prime: Cplx::new(z_prime, T::zero()), xi };
        p.validate()?;
        Ok(p)
    }

    pub fn with_xi(&self, xi: T) -> Result<Self> {
        let p = Self { xi, ..*self };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.xi > T::zero() && self.xi < T::one()) {
            return Err(Error::Invalid(format!("xi must lie in (0, 1), got {}", self.xi)));
        }
        match self.family {
            ZFamily::Principal => {
                if self.z_prime != self.z.conj() {
                    return Err(Error::Invalid("principal family needs z' = conj(z)".into()));
                }
                if self.z.im == T::zero() && as_integer(self.z.re).is_some() {
                    return Err(Error::Invalid("z must not be an integer".into()));
                }
            }
            ZFamily::Complementary => {
                let (z, zp) = (self.z, self.z_prime);
                if z.im != T::zero() || zp.im != T::zero() {
                    return Err(Error::Invalid("complementary family needs real z, z'".into()));
                }
                if as_integer(z.re).is_some() || as_integer(zp.re).is_some() {
                    return Err(Error::Invalid("z, z' must not be integers".into()));
                }
                if z.re.floor() != zp.re.floor() {
                    return Err(Error::Invalid("complementary family needs floor(z) = floor(z')".into()));
                }
            }
        }
        Ok(())
    }

    /// `z z'`, real and positive in both families.
    pub fn zz(&self) -> T {
        (self.z * self.z_prime).re
    }

    /// `z + z'`, real in both families.
    pub fn zsum(&self) -> T {
        (self.z + self.z_prime).re
    }

    /// `ξ/(ξ-1)`, the hypergeometric argument.
    pub fn v(&self) -> T {
        self.xi / (self.xi - T::one())
    }
}
