use num_traits::{One, Zero};

use super::{Column, DerivativeRule, MatrixFunction, Support};
use crate::error::{domain, Result};
use crate::kernels::{ThetaParams, ZParams};
use crate::scalar::{creal, is_finite_c, Cplx, Scalar};
use crate::specialfn::{bessel_j_complex, gamma_complex, gauss_2f1_complex, hypergeometric_u_complex};

/// `m ≡ I`: the solution for the empty jump.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdentitySolution;

impl<T: Scalar> MatrixFunction<T> for IdentitySolution {
    fn column(&self, col: Column, _u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        Ok(match col {
            Column::First => [Cplx::one(), Cplx::zero()],
            Column::Second => [Cplx::zero(), Cplx::one()],
        })
    }
    fn support(&self) -> Support {
        Support::Empty
    }
}

/// Sign of the `1/u` coefficient `β` of the Bessel solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `β = -η`: solves the problem with jump `w = -f gᵗ`.
    Minus,
    /// `β = +η`: solves it with the residue condition of opposite sign.
    Plus,
}

/// `m(u) = √η [[J_{u-1/2}, ±J_{-u+1/2}], [∓J_{u+1/2}, J_{-u-1/2}]] · diag(η^{-u}Γ(u+1/2), η^{u}Γ(-u+1/2))`
/// with `J` at `2η`; upper signs for [`Branch::Minus`].
#[derive(Debug, Clone, Copy)]
pub struct BesselSolution<T> {
    pub params: ThetaParams<T>,
    pub branch: Branch,
}

pub fn m_bessel<T: Scalar>(params: ThetaParams<T>, branch: Branch) -> BesselSolution<T> {
    BesselSolution { params, branch }
}

fn finite<T: Scalar>(v: [Cplx<T>; 2], what: &'static str, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
    if v.iter().all(|&c| is_finite_c(c)) {
        Ok(v)
    } else {
        Err(domain(what, format!("pole at {u}")))
    }
}

impl<T: Scalar> MatrixFunction<T> for BesselSolution<T> {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        let eta = self.params.eta;
        let arg = eta + eta;
        let half = T::lit(0.5);
        let sqrt_eta = eta.sqrt();
        let ln_eta = eta.ln();
        let sign = match self.branch {
            Branch::Minus => T::one(),
            Branch::Plus => -T::one(),
        };
        let v = match col {
            Column::First => {
                let d = (-u * ln_eta).exp() * gamma_complex(u + half)? * sqrt_eta;
                [bessel_j_complex(u - half, arg)? * d, -bessel_j_complex(u + half, arg)? * d * sign]
            }
            Column::Second => {
                let d = (u * ln_eta).exp() * gamma_complex(-u + half)? * sqrt_eta;
                [bessel_j_complex(-u + half, arg)? * d * sign, bessel_j_complex(-u - half, arg)? * d]
            }
        };
        finite(v, "m_bessel", u)
    }

    fn support(&self) -> Support {
        Support::HalfIntegers
    }

    fn derivative_rule(&self) -> DerivativeRule {
        DerivativeRule::ComplexStep
    }
}

/// The z-measure solution
/// `m = [[F(-z,-z';u+1/2;v), κ F(1+z,1+z';-u+3/2;v)/(-u+1/2)], [-κ F(1-z,1-z';u+3/2;v)/(u+1/2), F(z,z';-u+1/2;v)]]`
/// with `v = ξ/(ξ-1)` and `κ = √(zz'ξ)/(1-ξ)`.
#[derive(Debug, Clone, Copy)]
pub struct HypergeometricSolution<T> {
    pub params: ZParams<T>,
}

pub fn m_hypergeometric<T: Scalar>(params: ZParams<T>) -> Result<HypergeometricSolution<T>> {
    params.validate()?;
    Ok(HypergeometricSolution { params })
}

impl<T: Scalar> MatrixFunction<T> for HypergeometricSolution<T> {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        let p = &self.params;
        let (z, zp) = (p.z, p.z_prime);
        let v = p.v();
        let one = T::one();
        let half = T::lit(0.5);
        let kappa = (p.zz() * p.xi).sqrt() / (one - p.xi);
        let out = match col {
            Column::First => [
                gauss_2f1_complex(-z, -zp, u + half, v)?,
                -gauss_2f1_complex(-z + one, -zp + one, u + T::lit(1.5), v)? * kappa / (u + half),
            ],
            Column::Second => [
                gauss_2f1_complex(z + one, zp + one, -u + T::lit(1.5), v)? * kappa / (-u + half),
                gauss_2f1_complex(z, zp, -u + half, v)?,
            ],
        };
        finite(out, "m_hypergeometric", u)
    }

    fn support(&self) -> Support {
        Support::HalfIntegers
    }
}

/// The continuous solution built from Whittaker functions; principal
/// branches of `u^{·}` and `(-u)^{·}`, so the first column is cut along
/// `ℝ₋` and the second along `ℝ₊`.
#[derive(Debug, Clone, Copy)]
pub struct WhittakerSolution<T> {
    pub params: ZParams<T>,
}

pub fn m_whittaker<T: Scalar>(params: ZParams<T>) -> Result<WhittakerSolution<T>> {
    params.validate()?;
    Ok(WhittakerSolution { params })
}

/// `e^{w/2} W_{κ,μ}(w) = w^{μ+1/2} U(μ-κ+1/2, 1+2μ, w)`.
fn scaled_w<T: Scalar>(kappa: Cplx<T>, mu: Cplx<T>, w: Cplx<T>) -> Result<Cplx<T>> {
    let mu = if mu.re < T::zero() { -mu } else { mu };
    let half = T::lit(0.5);
    let u = hypergeometric_u_complex(mu - kappa + half, mu + mu + T::one(), w)?;
    Ok(((mu + half) * w.ln()).exp() * u)
}

impl<T: Scalar> MatrixFunction<T> for WhittakerSolution<T> {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        let p = &self.params;
        let half = T::lit(0.5);
        let s = p.z + p.z_prime;
        let mu = (p.z - p.z_prime) * half;
        let root = creal(p.zz().sqrt());
        let out = match col {
            Column::First => {
                let pre = (-(s + T::one()) * half * u.ln()).exp();
                [
                    pre * scaled_w((s + T::one()) * half, mu, u)?,
                    -root * pre * scaled_w((s - T::one()) * half, mu, u)?,
                ]
            }
            Column::Second => {
                let w = -u;
                let pre = ((s - T::one()) * half * w.ln()).exp();
                [
                    root * pre * scaled_w((-s - T::one()) * half, mu, w)?,
                    pre * scaled_w((-s + T::one()) * half, mu, w)?,
                ]
            }
        };
        finite(out, "m_whittaker", u)
    }

    fn support(&self) -> Support {
        Support::RealLine
    }
}
