//! Numerical checks of the limit transitions between the kernels: the
//! degeneration of the z-measure problem to the Bessel problem, the `ξ → 1`
//! limit to the continuous problem, and the `₂F₁ → W` confluence.

use serde::Serialize;

use crate::drhp::{m_bessel, m_hypergeometric, m_whittaker, Branch, Column, MatrixFunction};
use crate::error::{Error, Result};
use crate::kernels::{discrete_bessel_k, h_whittaker_continuous, h_zmeasure, kernel_matrix, HFunctions, ThetaParams, ZParams};
use crate::partitions::HalfInteger;
use crate::resolvent::Window;
use crate::scalar::{creal, Scalar};
use crate::specialfn::{gauss_2f1, whittaker_w};

/// Errors of a limit transition along a grid of scale values.
#[derive(Debug, Clone, Serialize)]
pub struct LimitReport<T> {
    pub parameter_grid: Vec<T>,
    pub errors: Vec<T>,
    /// Least-squares slope of `ln error` against `ln scale` (`s`, `1-ξ` or `x`);
    /// absent for fewer than two points.
    pub rate_estimate: Option<T>,
    pub strictly_decreasing: bool,
    /// Evaluation points that were moved off the lattice, as `(original, used)`.
    pub nudges: Vec<(T, T)>,
}

impl<T: Scalar> LimitReport<T> {
    fn new(parameter_grid: Vec<T>, errors: Vec<T>, scales: &[T], nudges: Vec<(T, T)>) -> Self {
        let strictly_decreasing = errors.windows(2).all(|w| w[1] < w[0]);
        Self { rate_estimate: log_log_slope(scales, &errors), parameter_grid, errors, strictly_decreasing, nudges }
    }

    /// Strictly decreasing errors whose last value is at most half the first.
    /// The second condition rejects sequences creeping towards a nonzero
    /// limit. A single point passes trivially.
    pub fn passes(&self) -> bool {
        let finite = self.errors.iter().all(|e| e.is_finite());
        let shrinks = match (self.errors.first(), self.errors.last()) {
            (Some(&a), Some(&b)) if self.errors.len() > 1 => b <= a * T::lit(0.5),
            _ => true,
        };
        finite && self.strictly_decreasing && shrinks
    }
}

fn log_log_slope<T: Scalar>(x: &[T], y: &[T]) -> Option<T> {
    if x.len() < 2 || y.iter().any(|v| !(*v > T::zero())) {
        return None;
    }
    let lx: Vec<T> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<T> = y.iter().map(|v| v.ln()).collect();
    let n = T::from_int(x.len() as i64);
    let mx = lx.iter().fold(T::zero(), |s, v| s + *v) / n;
    let my = ly.iter().fold(T::zero(), |s, v| s + *v) / n;
    let sxy = lx.iter().zip(&ly).fold(T::zero(), |s, (a, b)| s + (*a - mx) * (*b - my));
    let sxx = lx.iter().fold(T::zero(), |s, a| s + (*a - mx) * (*a - mx));
    Some(sxy / sxx)
}

/// Off-lattice points where the two solutions are compared.
pub const DEGENERATION_U: [f64; 2] = [0.25, 1.3];

/// `z = z' = s + 1/2`, `ξ = θ/(zz')`. For each `s` the error is the larger of
/// `max |K_hyp - K_bessel|` over `|x|, |y| <= 11/2` and `max |m^d(u) - m(u)|`
/// at [`DEGENERATION_U`].
pub fn check_z_degeneration<T: Scalar>(theta: T, s_grid: &[T]) -> Result<LimitReport<T>> {
    let p = ThetaParams::new(theta)?;
    let w = Window::new(6)?;
    let mb = m_bessel(p, Branch::Minus);
    let mut errors = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let z = s + T::lit(0.5);
        let zp = ZParams::complementary(z, z, theta / (z * z))?;
        let k = kernel_matrix(&m_hypergeometric(zp)?, &h_zmeasure(zp)?, w)?;
        let mut err = T::zero();
        for (i, x) in w.points().enumerate() {
            for (j, y) in w.points().enumerate() {
                err = err.max((k.entries[(i, j)] - discrete_bessel_k(x, y, p)?).abs());
            }
        }
        let md = m_hypergeometric(zp)?;
        for &u in &DEGENERATION_U {
            let u = creal(T::lit(u));
            err = err.max(md.eval(u)?.sub(&mb.eval(u)?).max_abs());
        }
        errors.push(err);
    }
    Ok(LimitReport::new(s_grid.to_vec(), errors, s_grid, Vec::new()))
}

fn nudge_off_lattice<T: Scalar>(v: T) -> T {
    let frac = v - v.floor();
    if (frac - T::lit(0.5)).abs() < T::lit(0.05) {
        v + T::lit(0.1)
    } else {
        v
    }
}

/// `ξ → 1` with lattice coordinate `x/(1-ξ)`: compares the first column of
/// `m^d(u/(1-ξ))` with that of `m^c(u)` and the second column at `-u`, and
/// `h^d` at the half-integer nearest to `±u/(1-ξ)` with `h^c(±u)`. The
/// errors are indexed by `ξ`; the rate is taken against `1-ξ`.
pub fn check_xi_limit<T: Scalar>(base: ZParams<T>, xi_grid: &[T], u_points: &[T]) -> Result<LimitReport<T>> {
    if u_points.iter().any(|u| !(*u > T::zero())) {
        return Err(Error::Invalid("xi-limit points must be positive".into()));
    }
    let mc = m_whittaker(base)?;
    let hc = h_whittaker_continuous(base)?;
    let mut errors = Vec::with_capacity(xi_grid.len());
    let mut nudges = Vec::new();
    for &xi in xi_grid {
        let zp = base.with_xi(xi)?;
        let md = m_hypergeometric(zp)?;
        let hd = h_zmeasure(zp)?;
        let scale = T::one() / (T::one() - xi);
        let mut err = T::zero();
        for &u in u_points {
            let lattice_u = u * scale;
            let used = nudge_off_lattice(lattice_u);
            if used != lattice_u {
                nudges.push((lattice_u, used));
            }
            let cu = creal(u);
            let a = md.column(Column::First, creal(used))?;
            let b = mc.column(Column::First, cu)?;
            let c = md.column(Column::Second, creal(-used))?;
            let d = mc.column(Column::Second, -cu)?;
            for (p, q) in a.iter().zip(&b).chain(c.iter().zip(&d)) {
                err = err.max((*p - *q).norm());
            }
            let k = (lattice_u - T::lit(0.5)).round().max(T::zero()).to_i64().unwrap_or(0);
            let x = HalfInteger::plus_half(k).value::<T>();
            err = err.max((hd.h_plus(x)? - hc.h_plus(u)?).abs());
            err = err.max((hd.h_minus(-x)? - hc.h_minus(-u)?).abs());
        }
        errors.push(err);
    }
    let scales: Vec<T> = xi_grid.iter().map(|&xi| T::one() - xi).collect();
    Ok(LimitReport::new(xi_grid.to_vec(), errors, &scales, nudges))
}

/// `|F(a,b;x;1-x/y) - y^{(a+b-1)/2} e^{y/2} W_{κ,(a-b)/2}(y)|` along `x_grid`,
/// with `κ = (1-a-b)/2`; `flip_kappa` uses `-κ` as a negative control.
pub fn check_f_to_w<T: Scalar>(a: T, b: T, y: T, x_grid: &[T], flip_kappa: bool) -> Result<LimitReport<T>> {
    if !(y > T::zero()) {
        return Err(Error::Invalid("y must be positive".into()));
    }
    let half = T::lit(0.5);
    let kappa = (T::one() - a - b) * half * if flip_kappa { -T::one() } else { T::one() };
    let limit = (((a + b - T::one()) * half) * y.ln() + y * half).exp() * whittaker_w(kappa, (a - b) * half, y)?;
    let errors =
        x_grid.iter().map(|&x| Ok((gauss_2f1(a, b, x, T::one() - x / y)? - limit).abs())).collect::<Result<Vec<T>>>()?;
    Ok(LimitReport::new(x_grid.to_vec(), errors, x_grid, Vec::new()))
}

/// `h^d` on the positive side at the lattice point nearest `x/(1-ξ)`.
pub fn h_discrete_at_scaled<T: Scalar>(zp: ZParams<T>, x: T) -> Result<T> {
    let k = (x / (T::one() - zp.xi) - T::lit(0.5)).round().max(T::zero()).to_i64().unwrap_or(0);
    h_zmeasure(zp)?.h_plus(HalfInteger::plus_half(k).value())
}
