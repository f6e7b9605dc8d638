//! Discrete Riemann–Hilbert problems in block form: jump data, closed-form
//! solutions, verifiers for the residue condition, unimodularity and
//! asymptotics, the linear-system solver, and the gauge transforms.

mod gauge;
mod linear;
mod solutions;
mod verify;

pub use gauge::{
    default_u_grid, eta_ode_residual, gauge_n, gauge_p, lattice_relation_residual, shift_relation_residual, GaugeN, GaugeP,
};
pub use linear::{compute_fg, solve_linear, FgReport, LinearSolution, PoleSum};
pub use solutions::{
    m_bessel, m_hypergeometric, m_whittaker, BesselSolution, Branch, HypergeometricSolution, IdentitySolution,
    WhittakerSolution,
};
pub use verify::{
    det_residual, extract_asymptotics, verify_residue, zeta_grid, AsymptoticsReport, RegularityReport, ResidueReport,
};

use crate::error::{numeric, Result};
use crate::kernels::HFunctions;
use crate::linalg::Mat2;
use crate::partitions::HalfInteger;
use crate::scalar::{cplx, creal, Cplx, Scalar};
use crate::specialfn::quadrature::contour_integral;

/// Which column of a 2×2 solution. The first column is holomorphic off the
/// negative part of the support, the second off the positive part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    First,
    Second,
}

impl Column {
    /// The column that is regular at a real point `x`.
    pub fn regular_at<T: Scalar>(x: T) -> Self {
        if x > T::zero() {
            Column::First
        } else {
            Column::Second
        }
    }

    fn index(self) -> usize {
        match self {
            Column::First => 0,
            Column::Second => 1,
        }
    }
}

/// Where a solution has its singularities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    /// Simple poles on `ℤ + 1/2`.
    HalfIntegers,
    /// Jumps along `ℝ \ {0}`.
    RealLine,
    /// No singularities.
    Empty,
}

/// How `dm/dζ` at a regular real point is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeRule {
    /// `Im m(x + ih)/h`; requires `m` real on the real axis and analytic arithmetic.
    ComplexStep,
    /// Cauchy integral on a circle inside the region of analyticity.
    Contour,
}

/// A 2×2 matrix-valued function of `ζ`, evaluated column by column.
pub trait MatrixFunction<T: Scalar>: Send + Sync {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]>;

    fn support(&self) -> Support;

    fn derivative_rule(&self) -> DerivativeRule {
        DerivativeRule::Contour
    }

    fn eval(&self, u: Cplx<T>) -> Result<Mat2<T>> {
        let a = self.column(Column::First, u)?;
        let b = self.column(Column::Second, u)?;
        let m = Mat2::new(a[0], b[0], a[1], b[1]);
        if !m.is_finite() {
            return Err(numeric("matrix function", format!("non-finite value at {u}")));
        }
        Ok(m)
    }
}

impl<T: Scalar, M: MatrixFunction<T> + ?Sized> MatrixFunction<T> for &M {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        (**self).column(col, u)
    }
    fn support(&self) -> Support {
        (**self).support()
    }
    fn derivative_rule(&self) -> DerivativeRule {
        (**self).derivative_rule()
    }
    fn eval(&self, u: Cplx<T>) -> Result<Mat2<T>> {
        (**self).eval(u)
    }
}

/// Number of trapezoid nodes on every circle.
pub const CONTOUR_NODES: usize = 64;

/// Radius of a circle around the regular real point `x` that avoids every
/// singularity of the column regular at `x`.
pub fn regular_radius<T: Scalar>(support: Support, x: T) -> T {
    match support {
        Support::HalfIntegers | Support::Empty => T::lit(0.5),
        Support::RealLine => (x.abs() * T::lit(0.5)).min(T::lit(0.5)),
    }
}

/// `d/dζ` of the column regular at the real point `x`.
pub fn column_derivative<T: Scalar, M: MatrixFunction<T> + ?Sized>(m: &M, x: T) -> Result<[Cplx<T>; 2]> {
    let col = Column::regular_at(x);
    match m.derivative_rule() {
        DerivativeRule::ComplexStep => {
            let h = T::lit(1e-20).max(T::epsilon() * T::epsilon());
            let v = m.column(col, cplx(x, h))?;
            Ok([creal(v[0].im / h), creal(v[1].im / h)])
        }
        DerivativeRule::Contour => {
            let r = regular_radius(m.support(), x);
            let center = creal(x);
            let mut out = [Cplx::new(T::zero(), T::zero()); 2];
            for (i, slot) in out.iter_mut().enumerate() {
                // m'(x) = (1/2πi)∮ m(ζ)/(ζ-x)² dζ
                *slot = contour_integral(|z| Ok(m.column(col, z)?[i] / ((z - center) * (z - center))), center, r, CONTOUR_NODES)?;
            }
            Ok(out)
        }
    }
}

/// The block-form jump `w(x) = -f(x) g(x)ᵗ`: strictly upper triangular
/// `[[0, -h_I²], [0, 0]]` on the positive side, strictly lower
/// `[[0, 0], [-h_II², 0]]` on the negative side.
pub fn jump<T: Scalar, H: HFunctions<T> + ?Sized>(h: &H, x: T) -> Result<Mat2<T>> {
    let hv = h.h(x)?;
    let w = creal(-hv * hv);
    let z = creal(T::zero());
    Ok(if x > T::zero() { Mat2::new(z, w, z, z) } else { Mat2::new(z, z, w, z) })
}

/// A discrete RHP in block form on (a finite part of) `ℤ'`.
pub struct DiscreteRhp<'a, T: Scalar> {
    pub h: &'a dyn HFunctions<T>,
    pub support: Vec<HalfInteger>,
    /// Multiplies the jump; `-1` flips the residue condition (negative control and the `β = +η` branch).
    pub jump_sign: T,
}

impl<'a, T: Scalar> DiscreteRhp<'a, T> {
    pub fn new(h: &'a dyn HFunctions<T>, support: Vec<HalfInteger>) -> Self {
        Self { h, support, jump_sign: T::one() }
    }

    pub fn jump(&self, x: HalfInteger) -> Result<Mat2<T>> {
        Ok(jump(self.h, x.value::<T>())?.scale(creal(self.jump_sign)))
    }

    /// True when `X_I = -X_II`.
    pub fn is_symmetric(&self) -> bool {
        let mut a: Vec<i64> = self.support.iter().map(|x| x.doubled()).collect();
        let mut b: Vec<i64> = a.iter().map(|d| -d).collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}
