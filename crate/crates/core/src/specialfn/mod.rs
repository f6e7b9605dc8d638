//! Special functions needed by the closed-form kernels and matrix solutions:
//! log-Gamma and friends, Bessel `J` of real and complex order, the Gauss
//! hypergeometric function and the Whittaker `W` function.
//!
//! All routines are pure; series truncation is controlled by a
//! [`PrecisionPolicy`].

mod bessel;
mod gamma;
mod hypergeometric;
pub mod quadrature;
mod whittaker;

pub use bessel::{bessel_j, bessel_j_complex, bessel_j_complex_with, bessel_j_dnu, bessel_j_dnu_with, bessel_j_with};
pub use gamma::{
    cos_pi, digamma, digamma_over_gamma, gamma, gamma_complex, ln_abs_pochhammer_complex, ln_gamma, ln_gamma_complex,
    pochhammer, pochhammer_complex, reciprocal_gamma, reciprocal_gamma_complex, sin_pi, sin_pi_complex, LogGamma,
};
pub use hypergeometric::{gauss_2f1, gauss_2f1_complex, gauss_2f1_complex_with, gauss_2f1_with};
pub use whittaker::{
    hypergeometric_u_complex, whittaker_w, whittaker_w_complex, whittaker_w_complex_with, whittaker_w_with,
};

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncation control shared by every series and quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    /// Relative size of the last retained term (or quadrature error estimate).
    pub target_rel_error: f64,
    /// Hard cap on the number of series terms.
    pub max_terms: usize,
}

const BUILTIN: PrecisionPolicy = PrecisionPolicy { target_rel_error: 1e-12, max_terms: 500 };

static PROCESS_DEFAULT: OnceLock<PrecisionPolicy> = OnceLock::new();

/// `1e-12` and 500 terms unless a process-wide default was installed.
impl Default for PrecisionPolicy {
    fn default() -> Self {
        *PROCESS_DEFAULT.get().unwrap_or(&BUILTIN)
    }
}

/// Installs the policy returned by [`PrecisionPolicy::default`] for the rest
/// of the process. Only the first call takes effect; call it before any
/// evaluation.
pub fn set_default_precision(policy: PrecisionPolicy) -> Result<()> {
    policy.validate()?;
    PROCESS_DEFAULT
        .set(policy)
        .map_err(|_| Error::Invalid("default precision was already installed".into()))
}

impl PrecisionPolicy {
    pub fn new(target_rel_error: f64, max_terms: usize) -> Result<Self> {
        let p = Self { target_rel_error, max_terms };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_rel_error > 0.0 && self.target_rel_error < 1e-6) {
            return Err(Error::Invalid(format!(
                "target_rel_error must lie in (0, 1e-6), got {}",
                self.target_rel_error
            )));
        }
        if self.max_terms < 50 {
            return Err(Error::Invalid(format!("max_terms must be >= 50, got {}", self.max_terms)));
        }
        Ok(())
    }

    /// Tolerance as a scalar, floored a little above the type's epsilon so
    /// that single-precision instantiations can still terminate.
    pub(crate) fn tol<T: Scalar>(&self) -> T {
        T::lit(self.target_rel_error).max(T::epsilon() * T::lit(8.0))
    }
}
