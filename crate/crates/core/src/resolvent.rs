//! Truncated resolvents on finite symmetric windows of the half-integer
//! lattice: the block operator `L`, `K = L(1+L)⁻¹` with its integrable
//! factors `F`, `G`, the discrete Hilbert transform `T`, and `K̂ = L(L-1)⁻¹`.

use serde::Serialize;

use crate::error::{numeric, Error, Result};
use crate::kernels::HFunctions;
use crate::linalg::{DenseMatrix, Lu};
use crate::partitions::HalfInteger;
use crate::scalar::Scalar;

/// Boundary-row ℓ¹ mass of `L` below which truncation is declared negligible.
pub const BOUNDARY_MASS_LIMIT: f64 = 1e-13;

/// Condition-number ceiling for `I ± L`.
pub const CONDITION_LIMIT: f64 = 1e8;

/// The points `x ∈ ℤ'` with `|x| <= n_max - 1/2`. Index `i` holds
/// `x_i = -n_max + 1/2 + i`, so `i = 0..2 n_max` runs from left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Window {
    pub n_max: usize,
}

impl Window {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::Invalid("window needs n_max >= 1".into()));
        }
        Ok(Self { n_max })
    }

    pub fn len(&self) -> usize {
        2 * self.n_max
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, i: usize) -> HalfInteger {
        HalfInteger::plus_half(i as i64 - self.n_max as i64)
    }

    pub fn index_of(&self, x: HalfInteger) -> Option<usize> {
        let i = (x.doubled() + 2 * self.n_max as i64 - 1) / 2;
        (0..self.len() as i64).contains(&i).then_some(i as usize)
    }

    pub fn points(&self) -> impl Iterator<Item = HalfInteger> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }

    pub fn values<T: Scalar>(&self) -> Vec<T> {
        self.points().map(|x| x.value()).collect()
    }
}

/// A dense real matrix indexed by a window.
#[derive(Debug, Clone, Serialize)]
pub struct WindowedOperator<T: Scalar> {
    pub window: Window,
    pub entries: DenseMatrix<T>,
}

impl<T: Scalar> WindowedOperator<T> {
    pub fn zeros(window: Window) -> Self {
        Self { window, entries: DenseMatrix::zeros(window.len(), window.len()) }
    }

    /// Entry at `(x, y)`; `None` when either point is outside the window.
    pub fn get(&self, x: HalfInteger, y: HalfInteger) -> Option<T> {
        Some(self.entries[(self.window.index_of(x)?, self.window.index_of(y)?)])
    }

    /// The restriction to a smaller centred window.
    pub fn restrict(&self, inner: Window) -> Result<Self> {
        if inner.n_max > self.window.n_max {
            return Err(Error::Invalid(format!("cannot restrict n_max = {} to {}", self.window.n_max, inner.n_max)));
        }
        let off = self.window.n_max - inner.n_max;
        Ok(Self { window: inner, entries: DenseMatrix::from_fn(inner.len(), inner.len(), |i, j| self.entries[(i + off, j + off)]) })
    }
}

/// The factors of `L(x,y) = fᵗ(x)g(y)/(x-y)` in block form:
/// `f = (h_I, 0)`, `g = (0, h_I)` on the positive side and
/// `f = (0, h_II)`, `g = (h_II, 0)` on the negative side, so `gᵗf = 0` exactly.
#[derive(Debug, Clone, Serialize)]
pub struct IntegrableData<T> {
    pub f: [Vec<T>; 2],
    pub g: [Vec<T>; 2],
}

impl<T: Scalar> IntegrableData<T> {
    pub fn from_h<H: HFunctions<T> + ?Sized>(h: &H, w: Window) -> Result<Self> {
        let n = w.len();
        let mut f = [vec![T::zero(); n], vec![T::zero(); n]];
        let mut g = [vec![T::zero(); n], vec![T::zero(); n]];
        for (i, x) in w.points().enumerate() {
            let xv: T = x.value();
            let hv = h.h(xv)?;
            if x.is_positive() {
                f[0][i] = hv;
                g[1][i] = hv;
            } else {
                f[1][i] = hv;
                g[0][i] = hv;
            }
        }
        Ok(Self { f, g })
    }

    pub fn zeros(w: Window) -> Self {
        let n = w.len();
        Self { f: [vec![T::zero(); n], vec![T::zero(); n]], g: [vec![T::zero(); n], vec![T::zero(); n]] }
    }

    pub fn f_at(&self, i: usize) -> [T; 2] {
        [self.f[0][i], self.f[1][i]]
    }

    pub fn g_at(&self, i: usize) -> [T; 2] {
        [self.g[0][i], self.g[1][i]]
    }
}

fn dot<T: Scalar>(a: [T; 2], b: [T; 2]) -> T {
    a[0] * b[0] + a[1] * b[1]
}

/// `L(x,y) = h_I(x)h_II(y)/(x-y)` on the `+-` block, `h_II(x)h_I(y)/(x-y)`
/// on `-+`, zero elsewhere. Refuses windows whose boundary rows carry
/// ℓ¹ mass above [`BOUNDARY_MASS_LIMIT`].
pub fn build_l<T: Scalar, H: HFunctions<T> + ?Sized>(h: &H, w: Window) -> Result<WindowedOperator<T>> {
    let l = build_l_unchecked(h, w)?;
    let mass = boundary_mass(&l);
    if !(mass < T::lit(BOUNDARY_MASS_LIMIT)) {
        return Err(Error::WindowTooSmall {
            n_max: w.n_max,
            boundary_mass: mass.to_f64().unwrap_or(f64::INFINITY),
            limit: BOUNDARY_MASS_LIMIT,
        });
    }
    Ok(l)
}

/// [`build_l`] without the truncation gate.
pub fn build_l_unchecked<T: Scalar, H: HFunctions<T> + ?Sized>(h: &H, w: Window) -> Result<WindowedOperator<T>> {
    let data = IntegrableData::from_h(h, w)?;
    let xs: Vec<T> = w.values();
    let n = w.len();
    let entries = DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            T::zero()
        } else {
            dot(data.f_at(i), data.g_at(j)) / (xs[i] - xs[j])
        }
    });
    Ok(WindowedOperator { window: w, entries })
}

/// Larger of the ℓ¹ norms of the first and last rows.
pub fn boundary_mass<T: Scalar>(l: &WindowedOperator<T>) -> T {
    let n = l.window.len();
    let row = |i: usize| l.entries.row(i).iter().fold(T::zero(), |s, v| s + v.abs());
    row(0).max(row(n - 1))
}

/// Smallest `n_max` in `[start, cap]` for which [`build_l`] accepts the window.
pub fn fit_window<T: Scalar, H: HFunctions<T> + ?Sized>(h: &H, start: usize, cap: usize) -> Result<Window> {
    let mut n = start.max(1);
    loop {
        let w = Window::new(n)?;
        match build_l(h, w) {
            Ok(_) => return Ok(w),
            Err(Error::WindowTooSmall { .. }) if n < cap => n = (n + n / 4).max(n + 1).min(cap),
            Err(e) => return Err(e),
        }
    }
}

/// `K = L(I+L)⁻¹` together with `F = (I+L)⁻¹f` and `G = (I+Lᵗ)⁻¹g`.
#[derive(Debug, Clone, Serialize)]
pub struct Resolvent<T: Scalar> {
    pub k: WindowedOperator<T>,
    pub f: [Vec<T>; 2],
    pub g: [Vec<T>; 2],
    /// One-norm condition estimate of `I + L`.
    pub condition: T,
}

impl<T: Scalar> Resolvent<T> {
    pub fn f_at(&self, i: usize) -> [T; 2] {
        [self.f[0][i], self.f[1][i]]
    }

    pub fn g_at(&self, i: usize) -> [T; 2] {
        [self.g[0][i], self.g[1][i]]
    }
}

fn factor_shifted<T: Scalar>(l: &WindowedOperator<T>, shift: T, func: &'static str) -> Result<Lu<T>> {
    let n = l.window.len();
    let a = DenseMatrix::from_fn(n, n, |i, j| l.entries[(i, j)] + if i == j { shift } else { T::zero() });
    let lu = Lu::factor(&a)?;
    let cond = lu.condition_estimate();
    if !(cond < T::lit(CONDITION_LIMIT)) {
        return Err(numeric(func, format!("condition estimate {cond} exceeds {CONDITION_LIMIT:e}")));
    }
    Ok(lu)
}

pub fn resolvent_k<T: Scalar>(l: &WindowedOperator<T>, data: &IntegrableData<T>) -> Result<Resolvent<T>> {
    let lu = factor_shifted(l, T::one(), "resolvent_k")?;
    // L and (I+L)⁻¹ commute
    let k = lu.solve_matrix(&l.entries);
    let f = [lu.solve(&data.f[0]), lu.solve(&data.f[1])];
    let g = [lu.solve_transpose(&data.g[0]), lu.solve_transpose(&data.g[1])];
    Ok(Resolvent { k: WindowedOperator { window: l.window, entries: k }, f, g, condition: lu.condition_estimate() })
}

/// `K̂ = L(L-I)⁻¹`.
pub fn hat_k<T: Scalar>(l: &WindowedOperator<T>) -> Result<WindowedOperator<T>> {
    let lu = factor_shifted(l, -T::one(), "hat_k")?;
    Ok(WindowedOperator { window: l.window, entries: lu.solve_matrix(&l.entries) })
}

/// Residuals of the integrable structure of a computed resolvent.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StructureReport<T> {
    /// `max |K(x,y) - Fᵗ(x)G(y)/(x-y)|` over `x ≠ y`.
    pub off_diagonal: T,
    /// `max |K(x,x) + Σ_{y≠x} L(x,y)K(y,x)|`.
    pub diagonal: T,
    /// `max |Fᵗ(x)G(x)|`.
    pub orthogonality: T,
}

pub fn check_integrable_structure<T: Scalar>(l: &WindowedOperator<T>, r: &Resolvent<T>) -> StructureReport<T> {
    let n = l.window.len();
    let xs: Vec<T> = l.window.values();
    let k = &r.k.entries;
    let mut off = T::zero();
    let mut diag = T::zero();
    let mut orth = T::zero();
    for i in 0..n {
        orth = orth.max(dot(r.f_at(i), r.g_at(i)).abs());
        let mut s = k[(i, i)];
        for j in 0..n {
            if j == i {
                continue;
            }
            s += l.entries[(i, j)] * k[(j, i)];
            let v = dot(r.f_at(i), r.g_at(j)) / (xs[i] - xs[j]);
            off = off.max((k[(i, j)] - v).abs());
        }
        diag = diag.max(s.abs());
    }
    StructureReport { off_diagonal: off, diagonal: diag, orthogonality: orth }
}

/// `(Th)(x) = Σ_{x'≠x} h(x')/(x-x')` on the window.
pub fn apply_t<T: Scalar>(h: &[T], w: Window) -> Result<Vec<T>> {
    if h.len() != w.len() {
        return Err(Error::Invalid(format!("vector has length {}, window has {}", h.len(), w.len())));
    }
    let xs: Vec<T> = w.values();
    Ok((0..w.len())
        .map(|i| (0..w.len()).filter(|&j| j != i).fold(T::zero(), |s, j| s + h[j] / (xs[i] - xs[j])))
        .collect())
}

/// `‖T‖₂` by power iteration on `TᵗT = -T²`.
pub fn t_operator_norm<T: Scalar>(w: Window, iterations: usize) -> Result<T> {
    let n = w.len();
    let mut v: Vec<T> = (0..n).map(|i| T::one() + T::from_int(i as i64) / T::from_int(n as i64)).collect();
    let mut est = T::zero();
    for _ in 0..iterations {
        let norm = v.iter().fold(T::zero(), |s, a| s + *a * *a).sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        let tv = apply_t(&v, w)?;
        let ttv: Vec<T> = apply_t(&tv, w)?.into_iter().map(|a| -a).collect();
        est = tv.iter().fold(T::zero(), |s, a| s + *a * *a).sqrt();
        v = ttv;
    }
    Ok(est)
}
