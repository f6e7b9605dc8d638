use serde::Serialize;

use super::{column_derivative, Column, DerivativeRule, MatrixFunction, Support, CONTOUR_NODES};
use crate::error::{numeric, Result};
use crate::kernels::HFunctions;
use crate::linalg::{DenseMatrix, Lu};
use crate::partitions::HalfInteger;
use crate::resolvent::{IntegrableData, Window};
use crate::scalar::{creal, Cplx, Scalar};
use crate::specialfn::quadrature::circle_nodes;

/// `I + sign · Σ_y a(y) b(y)ᵗ / (ζ - y)` over the window points.
#[derive(Debug, Clone, Serialize)]
pub struct PoleSum<T> {
    pub points: Vec<T>,
    pub left: Vec<[T; 2]>,
    pub right: Vec<[T; 2]>,
    pub sign: T,
}

impl<T: Scalar> MatrixFunction<T> for PoleSum<T> {
    fn column(&self, col: Column, u: Cplx<T>) -> Result<[Cplx<T>; 2]> {
        let j = col.index();
        let mut out = [Cplx::new(T::zero(), T::zero()); 2];
        out[j] = creal(T::one());
        for ((y, a), b) in self.points.iter().zip(&self.left).zip(&self.right) {
            // exact zeros keep the column finite at the points where it is regular
            if b[j] == T::zero() {
                continue;
            }
            let d = u - *y;
            out[0] += creal(self.sign * a[0] * b[j]) / d;
            out[1] += creal(self.sign * a[1] * b[j]) / d;
        }
        Ok(out)
    }

    fn support(&self) -> Support {
        Support::HalfIntegers
    }

    fn derivative_rule(&self) -> DerivativeRule {
        DerivativeRule::ComplexStep
    }
}

/// Output of [`solve_linear`]: `μ`, `μ̃` on the window and the reconstructed
/// `m(ζ) = I - Σ μ(y)(fgᵗ)(y)/(ζ-y)`, `m̃(ζ) = I + Σ μ̃(y)(gfᵗ)(y)/(ζ-y)`.
#[derive(Debug, Clone, Serialize)]
pub struct LinearSolution<T> {
    pub window: Window,
    pub mu: Vec<[[T; 2]; 2]>,
    pub mu_tilde: Vec<[[T; 2]; 2]>,
    pub m: PoleSum<T>,
    pub m_tilde: PoleSum<T>,
    /// `F(x) = μ(x)f(x)`.
    pub f: Vec<[T; 2]>,
    /// `G(x) = μ̃(x)g(x)`.
    pub g: Vec<[T; 2]>,
}

/// Solves `ν(x) = I + s Σ_{y≠x} ν(y) a(y)b(y)ᵗ/(x-y)` row by row: each row of
/// `ν` satisfies the same `2N`-dimensional system, so the `4N` unknowns split
/// into two solves with one LU factorization.
fn solve_rows<T: Scalar>(xs: &[T], a: &[[T; 2]], b: &[[T; 2]], s: T) -> Result<Vec<[[T; 2]; 2]>> {
    let n = xs.len();
    let mat = DenseMatrix::from_fn(2 * n, 2 * n, |r, c| {
        let (i, jj) = (r / 2, r % 2);
        let (y, k) = (c / 2, c % 2);
        if i == y {
            return if jj == k { T::one() } else { T::zero() };
        }
        -s * a[y][k] * b[y][jj] / (xs[i] - xs[y])
    });
    let lu = Lu::factor(&mat)?;
    let mut nu = vec![[[T::zero(); 2]; 2]; n];
    for row in 0..2 {
        let rhs: Vec<T> = (0..2 * n).map(|r| if r % 2 == row { T::one() } else { T::zero() }).collect();
        let sol = lu.solve(&rhs);
        for i in 0..n {
            nu[i][row] = [sol[2 * i], sol[2 * i + 1]];
        }
    }
    Ok(nu)
}

fn mat_vec<T: Scalar>(m: &[[T; 2]; 2], v: [T; 2]) -> [T; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

/// The linear-system route to the DRHP with jump `-f gᵗ` on a window.
pub fn solve_linear<T: Scalar, H: HFunctions<T> + ?Sized>(h: &H, w: Window) -> Result<LinearSolution<T>> {
    let data = IntegrableData::from_h(h, w)?;
    let xs: Vec<T> = w.values();
    let f: Vec<[T; 2]> = (0..w.len()).map(|i| data.f_at(i)).collect();
    let g: Vec<[T; 2]> = (0..w.len()).map(|i| data.g_at(i)).collect();
    let mu = solve_rows(&xs, &f, &g, -T::one())?;
    let mu_tilde = solve_rows(&xs, &g, &f, T::one())?;
    let big_f: Vec<[T; 2]> = mu.iter().zip(&f).map(|(m, v)| mat_vec(m, *v)).collect();
    let big_g: Vec<[T; 2]> = mu_tilde.iter().zip(&g).map(|(m, v)| mat_vec(m, *v)).collect();
    Ok(LinearSolution {
        window: w,
        m: PoleSum { points: xs.clone(), left: big_f.clone(), right: g, sign: -T::one() },
        m_tilde: PoleSum { points: xs, left: big_g.clone(), right: f, sign: T::one() },
        mu,
        mu_tilde,
        f: big_f,
        g: big_g,
    })
}

/// `F`, `G` and the diagonal of `K` recovered from a solution `m`.
#[derive(Debug, Clone, Serialize)]
pub struct FgReport<T> {
    pub x2: Vec<i64>,
    /// `F(x) = lim m(ζ) f(x)`.
    pub f: Vec<[T; 2]>,
    /// `G(x) = lim (mᵗ(ζ))⁻¹ g(x)`.
    pub g: Vec<[T; 2]>,
    /// `K(x,x) = Gᵗ(x) lim m'(ζ) f(x)`.
    pub k_diag: Vec<T>,
    /// `max |Gᵗ(x)F(x)|`.
    pub orthogonality: T,
}

/// The column of `m` regular at `x`, by direct evaluation or, if that is
/// not finite, as its mean over a small circle.
fn regular_column<T: Scalar, M: MatrixFunction<T> + ?Sized>(m: &M, x: T) -> Result<[Cplx<T>; 2]> {
    let col = Column::regular_at(x);
    if let Ok(v) = m.column(col, creal(x)) {
        if v.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Ok(v);
        }
    }
    let nodes = circle_nodes(creal(x), T::lit(0.25), CONTOUR_NODES);
    let mut acc = [creal(T::zero()); 2];
    for z in &nodes {
        let v = m.column(col, *z)?;
        acc = [acc[0] + v[0], acc[1] + v[1]];
    }
    let n = T::from_int(nodes.len() as i64);
    Ok([acc[0] / n, acc[1] / n])
}

fn real_part<T: Scalar>(v: Cplx<T>, scale: T) -> Result<T> {
    if v.im.abs() > T::lit(1e-10) * scale.max(v.re.abs()) {
        return Err(numeric("compute_fg", format!("imaginary residue {} on a real quantity", v.im)));
    }
    Ok(v.re)
}

/// Uses `det m = 1`, so `(mᵗ)⁻¹ = [[m₂₂, -m₂₁], [-m₁₂, m₁₁]]`. On the positive
/// side only the first column of `m` enters, on the negative side the second.
pub fn compute_fg<T, M, H>(m: &M, h: &H, points: &[HalfInteger]) -> Result<FgReport<T>>
where
    T: Scalar,
    M: MatrixFunction<T> + ?Sized,
    H: HFunctions<T> + ?Sized,
{
    let mut out = FgReport { x2: Vec::new(), f: Vec::new(), g: Vec::new(), k_diag: Vec::new(), orthogonality: T::zero() };
    for &x in points {
        let xv: T = x.value();
        let hv = h.h(xv)?;
        let c = regular_column(m, xv)?;
        let d = column_derivative(m, xv)?;
        let scale = c[0].norm().max(c[1].norm());
        let (c0, c1) = (real_part(c[0], scale)?, real_part(c[1], scale)?);
        let dscale = d[0].norm().max(d[1].norm());
        let (d0, d1) = (real_part(d[0], dscale)?, real_part(d[1], dscale)?);
        let (f, g, kd) = if x.is_positive() {
            // f = (h, 0), g = (0, h)
            ([hv * c0, hv * c1], [-hv * c1, hv * c0], hv * hv * (-c1 * d0 + c0 * d1))
        } else {
            // f = (0, h), g = (h, 0)
            ([hv * c0, hv * c1], [hv * c1, -hv * c0], hv * hv * (c1 * d0 - c0 * d1))
        };
        out.orthogonality = out.orthogonality.max((f[0] * g[0] + f[1] * g[1]).abs());
        out.x2.push(x.doubled());
        out.f.push(f);
        out.g.push(g);
        out.k_diag.push(kd);
    }
    Ok(out)
}
