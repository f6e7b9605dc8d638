//! Closed-form kernels: the elementary kernel `L`, the discrete Bessel
//! kernel, the hypergeometric and Whittaker kernels, and the assembly of
//! `K` from a 2×2 solution `m` and the pair `(h_I, h_II)`.

mod hfun;
mod params;

pub use hfun::{h_bessel, h_whittaker_continuous, h_zmeasure, BesselH, HFunctions, WhittakerH, ZMeasureH};
pub use params::{ThetaParams, ZFamily, ZParams};

use serde::Serialize;

use crate::drhp::{column_derivative, m_bessel, m_hypergeometric, m_whittaker, Branch, Column, MatrixFunction};
use crate::error::{numeric, Result};
use crate::linalg::DenseMatrix;
use crate::partitions::HalfInteger;
use crate::resolvent::{Window, WindowedOperator};
use crate::scalar::{creal, Cplx, Scalar};
use crate::specialfn::{bessel_j, bessel_j_dnu};

/// Which sign block `(x, y)` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Block {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl Block {
    pub fn of<T: Scalar>(x: T, y: T) -> Self {
        match (x > T::zero(), y > T::zero()) {
            (true, true) => Block::PlusPlus,
            (true, false) => Block::PlusMinus,
            (false, true) => Block::MinusPlus,
            (false, false) => Block::MinusMinus,
        }
    }

    pub fn is_diagonal(self) -> bool {
        matches!(self, Block::PlusPlus | Block::MinusMinus)
    }
}

/// A kernel on `ℤ' × ℤ'`.
pub trait LatticeKernel<T: Scalar>: Send + Sync {
    fn eval(&self, x: HalfInteger, y: HalfInteger) -> Result<T>;

    fn block(&self, x: HalfInteger, y: HalfInteger) -> Block {
        Block::of(x.value::<T>(), y.value::<T>())
    }
}

impl<T: Scalar, K: LatticeKernel<T> + ?Sized> LatticeKernel<T> for &K {
    fn eval(&self, x: HalfInteger, y: HalfInteger) -> Result<T> {
        (**self).eval(x, y)
    }
}

impl<T: Scalar> LatticeKernel<T> for WindowedOperator<T> {
    fn eval(&self, x: HalfInteger, y: HalfInteger) -> Result<T> {
        self.get(x, y).ok_or_else(|| crate::Error::Invalid(format!("({x}, {y}) lies outside the window")))
    }
}

/// `L(x,y)` for poissonized Plancherel: zero on same-sign pairs,
/// `θ^{(x-y)/2}/(Γ(x+1/2)Γ(-y+1/2)(x-y))` for `x > 0 > y`, mirrored for `x < 0 < y`.
pub fn l_kernel<T: Scalar>(x: HalfInteger, y: HalfInteger, p: ThetaParams<T>) -> Result<T> {
    let (xv, yv): (T, T) = (x.value(), y.value());
    if Block::of(xv, yv).is_diagonal() {
        return Ok(T::zero());
    }
    let h = h_bessel(p);
    Ok(h.h(xv)? * h.h(yv)? / (xv - yv))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LKernel<T> {
    pub params: ThetaParams<T>,
}

impl<T: Scalar> LatticeKernel<T> for LKernel<T> {
    fn eval(&self, x: HalfInteger, y: HalfInteger) -> Result<T> {
        l_kernel(x, y, self.params)
    }
}

/// The discrete Bessel kernel, `J` evaluated at `2√θ`:
///
/// `K(x,y) = √θ (J_{x-1/2}J_{y+1/2} - J_{x+1/2}J_{y-1/2})/(x-y)` for `x, y > 0`,
/// `√θ (J_{x-1/2}J_{-y-1/2} + J_{x+1/2}J_{-y+1/2})/(x-y)` for `x > 0 > y`,
/// `√θ (J_{-x-1/2}J_{y-1/2} + J_{-x+1/2}J_{y+1/2})/(x-y)` for `x < 0 < y`,
/// and `K(x,y) = K(-x,-y)` for `x, y < 0`. On the diagonal
/// `K(x,x) = √θ (J_{x+1/2} ∂J_{x-1/2} - J_{x-1/2} ∂J_{x+1/2})`, `∂ = ∂/∂ν`.
pub fn discrete_bessel_k<T: Scalar>(x: HalfInteger, y: HalfInteger, p: ThetaParams<T>) -> Result<T> {
    let arg = p.eta + p.eta;
    let half = T::lit(0.5);
    let j = |nu: T| bessel_j(nu, arg);
    let (xv, yv): (T, T) = (x.value(), y.value());
    match Block::of(xv, yv) {
        Block::MinusMinus => discrete_bessel_k(-x, -y, p),
        Block::PlusPlus if x == y => {
            let d = |nu: T| bessel_j_dnu(nu, arg);
            Ok(p.eta * (j(xv + half)? * d(xv - half)? - j(xv - half)? * d(xv + half)?))
        }
        Block::PlusPlus => Ok(p.eta * (j(xv - half)? * j(yv + half)? - j(xv + half)? * j(yv - half)?) / (xv - yv)),
        Block::PlusMinus => Ok(p.eta * (j(xv - half)? * j(-yv - half)? + j(xv + half)? * j(-yv + half)?) / (xv - yv)),
        Block::MinusPlus => Ok(p.eta * (j(-xv - half)? * j(yv - half)? + j(-xv + half)? * j(yv + half)?) / (xv - yv)),
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiscreteBesselKernel<T> {
    pub params: ThetaParams<T>,
}

impl<T: Scalar> LatticeKernel<T> for DiscreteBesselKernel<T> {
    fn eval(&self, x: HalfInteger, y: HalfInteger) -> Result<T> {
        discrete_bessel_k(x, y, self.params)
    }
}

/// The column of `m` regular at `x` together with `h(x)`, and the
/// derivative of that column when it is needed for the diagonal.
#[derive(Debug, Clone, Copy)]
struct PointData<T: Scalar> {
    x: T,
    h: T,
    col: [Cplx<T>; 2],
    dcol: Option<[Cplx<T>; 2]>,
}

fn point_data<T, M, H>(m: &M, h: &H, x: T, with_derivative: bool) -> Result<PointData<T>>
where
    T: Scalar,
    M: MatrixFunction<T> + ?Sized,
    H: HFunctions<T> + ?Sized,
{
    let col = m.column(Column::regular_at(x), creal(x))?;
    if !col.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        return Err(numeric("assemble_from_solution", format!("non-finite solution at {x}")));
    }
    let dcol = if with_derivative { Some(column_derivative(m, x)?) } else { None };
    Ok(PointData { x, h: h.h(x)?, col, dcol })
}

fn real_value<T: Scalar>(v: Cplx<T>, scale: T) -> Result<T> {
    if !(v.im.abs() <= T::lit(1e-10) * scale.max(v.re.abs()).max(T::min_positive_value())) {
        return Err(numeric("assemble_from_solution", format!("imaginary residue {} (real part {})", v.im, v.re)));
    }
    Ok(v.re)
}

/// With `a(x)` the column of `m` regular at `x` and `σ(y) = ±1` the sign of `y`,
/// every block reads `K(x,y) = σ(y) h(x)h(y)(a₂(x)a₁(y) - a₁(x)a₂(y))/(x-y)`;
/// on the diagonal the limit is `σ(x) h(x)²(a₁a₂' - a₂a₁')(x)`.
fn assemble_pair<T: Scalar>(px: &PointData<T>, py: &PointData<T>) -> Result<T> {
    let (a, b) = (px.col, py.col);
    if px.x == py.x {
        let d = px.dcol.expect("derivative requested for diagonal");
        let v = a[0] * d[1] - a[1] * d[0];
        let scale = (a[0] * d[1]).norm().max((a[1] * d[0]).norm());
        let s = if px.x > T::zero() { T::one() } else { -T::one() };
        return Ok(s * px.h * px.h * real_value(v, scale)?);
    }
    let v = a[1] * b[0] - a[0] * b[1];
    let scale = (a[1] * b[0]).norm().max((a[0] * b[1]).norm());
    let s = if py.x > T::zero() { T::one() } else { -T::one() };
    Ok(s * px.h * py.h * real_value(v, scale)? / (px.x - py.x))
}

/// `K(x,y)` from a solution `m` of the block problem with data `(h_I, h_II)`.
/// Works for lattice points and, for a continuous solution, for any nonzero reals.
pub fn assemble_from_solution<T, M, H>(m: &M, h: &H, x: T, y: T) -> Result<T>
where
    T: Scalar,
    M: MatrixFunction<T> + ?Sized,
    H: HFunctions<T> + ?Sized,
{
    let px = point_data(m, h, x, x == y)?;
    let py = if x == y { px } else { point_data(m, h, y, false)? };
    assemble_pair(&px, &py)
}

/// [`assemble_from_solution`] over a whole window, evaluating each column once.
pub fn kernel_matrix<T, M, H>(m: &M, h: &H, w: Window) -> Result<WindowedOperator<T>>
where
    T: Scalar,
    M: MatrixFunction<T> + ?Sized,
    H: HFunctions<T> + ?Sized,
{
    let data = w.values::<T>().into_iter().map(|x| point_data(m, h, x, true)).collect::<Result<Vec<_>>>()?;
    let n = w.len();
    let mut entries = DenseMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            entries[(i, j)] = assemble_pair(&data[i], &data[j])?;
        }
    }
    Ok(WindowedOperator { window: w, entries })
}

/// A kernel assembled on demand from a solution and its h-functions.
#[derive(Debug, Clone, Copy)]
pub struct SolutionKernel<M, H> {
    pub m: M,
    pub h: H,
    /// `-1` turns the assembly into the kernel of the sign-flipped problem.
    pub sign: f64,
}

impl<T: Scalar, M: MatrixFunction<T>, H: HFunctions<T>> LatticeKernel<T> for SolutionKernel<M, H> {
    fn eval(&self, x: HalfInteger, y: HalfInteger) -> Result<T> {
        Ok(T::lit(self.sign) * assemble_from_solution(&self.m, &self.h, x.value::<T>(), y.value::<T>())?)
    }
}

pub type HypergeometricKernel<T> = SolutionKernel<crate::drhp::HypergeometricSolution<T>, ZMeasureH<T>>;

pub fn hypergeometric_kernel_evaluator<T: Scalar>(zp: ZParams<T>) -> Result<HypergeometricKernel<T>> {
    Ok(SolutionKernel { m: m_hypergeometric(zp)?, h: h_zmeasure(zp)?, sign: 1.0 })
}

/// The hypergeometric kernel of the z-measures.
pub fn hypergeometric_kernel<T: Scalar>(x: HalfInteger, y: HalfInteger, zp: ZParams<T>) -> Result<T> {
    hypergeometric_kernel_evaluator(zp)?.eval(x, y)
}

/// The Whittaker kernel on `ℝ* × ℝ*`.
pub fn whittaker_kernel<T: Scalar>(x: T, y: T, zp: ZParams<T>) -> Result<T> {
    assemble_from_solution(&m_whittaker(zp)?, &h_whittaker_continuous(zp)?, x, y)
}

/// `K̂ = L(L-1)⁻¹` in closed form: minus the assembly of the `β = +η` solution.
pub fn bessel_hat_kernel<T: Scalar>(params: ThetaParams<T>) -> SolutionKernel<crate::drhp::BesselSolution<T>, BesselH<T>> {
    SolutionKernel { m: m_bessel(params, Branch::Plus), h: h_bessel(params), sign: -1.0 }
}
