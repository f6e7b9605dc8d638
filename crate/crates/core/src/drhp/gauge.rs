use num_traits::Zero;

use super::{m_bessel, Branch, Column, MatrixFunction, Support, CONTOUR_NODES};
use crate::error::Result;
use crate::kernels::ThetaParams;
use crate::linalg::Mat2;
use crate::partitions::HalfInteger;
use crate::scalar::{cplx, creal, parity_sign, Cplx, Scalar};
use crate::specialfn::quadrature::circle_nodes;
use crate::specialfn::reciprocal_gamma_complex;

/// `n(u) = m(u) diag(η^u, η^{-u})`.
#[derive(Debug, Clone, Copy)]
pub struct GaugeN<M, T> {
    pub m: M,
    pub eta: T,
}

pub fn gauge_n<T: Scalar, M: MatrixFunction<T>>(m: M, params: ThetaParams<T>) -> GaugeN<M, T> {
    GaugeN { m, eta: params.eta }
}

impl<T: Scalar, M: MatrixFunction<T>> MatrixFunction<T> for GaugeN<M, T> {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        let v = self.m.column(col, u)?;
        let ln_eta = self.eta.ln();
        let f = match col {
            Column::First => (u * ln_eta).exp(),
            Column::Second => (-u * ln_eta).exp(),
        };
        Ok([v[0] * f, v[1] * f])
    }
    fn support(&self) -> Support {
        self.m.support()
    }
    fn derivative_rule(&self) -> super::DerivativeRule {
        self.m.derivative_rule()
    }
}

/// `p(u) = n(u) diag(1/Γ(u+1/2), 1/Γ(-u+1/2))`, entire when `m` solves the
/// problem. At the lattice points, where the factors of `n` are singular,
/// the value is the mean over a small circle.
#[derive(Debug, Clone, Copy)]
pub struct GaugeP<N> {
    pub n: N,
}

pub fn gauge_p<T: Scalar, N: MatrixFunction<T>>(n: N) -> GaugeP<N> {
    GaugeP { n }
}

impl<N> GaugeP<N> {
    fn direct<T: Scalar>(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]>
    where
        N: MatrixFunction<T>,
    {
        let v = self.n.column(col, u)?;
        let half = T::lit(0.5);
        let f = match col {
            Column::First => reciprocal_gamma_complex(u + half),
            Column::Second => reciprocal_gamma_complex(-u + half),
        };
        Ok([v[0] * f, v[1] * f])
    }

    /// Largest modulus of `p` on the circle `|ζ - x| = r`.
    pub fn sup_on_circle<T: Scalar>(&self, x: T, r: T) -> Result<T>
    where
        N: MatrixFunction<T>,
    {
        let mut sup = T::zero();
        for z in circle_nodes(creal(x), r, CONTOUR_NODES) {
            sup = sup.max(self.eval(z)?.max_abs());
        }
        Ok(sup)
    }
}

impl<T: Scalar, N: MatrixFunction<T>> MatrixFunction<T> for GaugeP<N> {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        let near_lattice = u.im.is_zero() && {
            let s = u.re - T::lit(0.5);
            s == s.round()
        };
        if !near_lattice {
            return self.direct(col, u);
        }
        let nodes = circle_nodes(u, T::lit(0.25), CONTOUR_NODES);
        let mut acc = [Cplx::zero(); 2];
        for z in &nodes {
            let v = self.direct(col, *z)?;
            acc[0] += v[0];
            acc[1] += v[1];
        }
        let n = T::from_int(nodes.len() as i64);
        Ok([acc[0] / n, acc[1] / n])
    }
    fn support(&self) -> Support {
        Support::Empty
    }
}

/// Residual of `p(x) = (-1)^{x-1/2} p(x) [[0,1],[1,0]]` at a lattice point.
pub fn lattice_relation_residual<T: Scalar, N: MatrixFunction<T>>(p: &GaugeP<N>, x: HalfInteger) -> Result<T> {
    let px = p.eval(creal(x.value::<T>()))?;
    let s = creal(parity_sign::<T>((x.doubled() - 1) / 2));
    let swapped = Mat2::new(px.get(0, 1), px.get(0, 0), px.get(1, 1), px.get(1, 0)).scale(s);
    Ok(px.sub(&swapped).max_abs() / px.max_abs().max(T::min_positive_value()))
}

/// Largest of the four shift-relation residuals
/// `p₁₁(u+1) = r p₂₁(u)`, `p₂₁(u-1) = r p₁₁(u)`, `-p₁₂(u+1) = r p₂₂(u)`, `p₂₂(u-1) = -r p₁₂(u)`
/// with `r = β/η`, relative to the size of `p` at `u`.
pub fn shift_relation_residual<T: Scalar, N: MatrixFunction<T>>(p: &GaugeP<N>, r: T, u: Cplx<T>) -> Result<T> {
    let one = T::one();
    let pu = p.eval(u)?;
    let up = p.eval(u + one)?;
    let dn = p.eval(u - one)?;
    let r = creal(r);
    let res = [
        up.get(0, 0) - r * pu.get(1, 0),
        dn.get(1, 0) - r * pu.get(0, 0),
        -up.get(0, 1) - r * pu.get(1, 1),
        dn.get(1, 1) + r * pu.get(0, 1),
    ];
    let scale = pu.max_abs().max(up.max_abs()).max(dn.max_abs());
    Ok(res.iter().map(|c| c.norm()).fold(T::zero(), T::max) / scale)
}

/// Central-difference check of `∂_η n = (1/η)[[u, -2β], [2β, -u]] n` for the
/// Bessel solution with `β = -η` (first column: `∂_η n₁₁ = (u/η)n₁₁ + 2n₂₁`,
/// `∂_η n₂₁ = -(u/η)n₂₁ - 2n₁₁`; second column likewise). Returns the largest
/// residual relative to the size of the derivative.
pub fn eta_ode_residual<T: Scalar>(eta: T, u: Cplx<T>, step: T) -> Result<T> {
    let n_at = |e: T| -> Result<Mat2<T>> {
        let p = ThetaParams::from_eta(e)?;
        gauge_n(m_bessel(p, Branch::Minus), p).eval(u)
    };
    let plus = n_at(eta + step)?;
    let minus = n_at(eta - step)?;
    let dn = plus.sub(&minus).scale(creal(T::one() / (step + step)));
    let n = n_at(eta)?;
    let two = T::lit(2.0);
    // β = -η turns (1/η)[[u, -2β], [2β, -u]] into [[u/η, 2], [-2, -u/η]]
    let a = Mat2::new(u / eta, creal(two), creal(-two), -u / eta);
    let rhs = a.mul(&n);
    let scale = dn.max_abs().max(rhs.max_abs());
    Ok(dn.sub(&rhs).max_abs() / scale)
}

/// A few off-lattice points in the band `|Re u| < 3`.
pub fn default_u_grid<T: Scalar>() -> Vec<Cplx<T>> {
    [(0.2, 0.3), (-0.7, 0.1), (1.3, -0.4), (2.3, 0.0), (-1.7, 0.6), (0.9, 1.2)]
        .iter()
        .map(|&(a, b)| cplx(T::lit(a), T::lit(b)))
        .collect()
}
