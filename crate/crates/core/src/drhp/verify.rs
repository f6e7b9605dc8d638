use num_traits::Zero;
use serde::Serialize;

use super::{DiscreteRhp, MatrixFunction, CONTOUR_NODES};
use crate::error::{numeric, Result};
use crate::linalg::Mat2;
use crate::partitions::HalfInteger;
use crate::scalar::{creal, Cplx, Scalar};
use crate::specialfn::quadrature::circle_nodes;

/// Residue check at one support point.
#[derive(Debug, Clone, Serialize)]
pub struct ResidueReport<T> {
    pub x2: i64,
    /// `max |Res m - lim m(ζ)w(x)|` over the four entries.
    pub residual: T,
    pub regularity: RegularityReport<T>,
}

/// Sup of `‖m(ζ)(I - w(x)/(ζ-x))‖` on circles of shrinking radius around `x`.
/// With `Res m = lim m(ζ)w(x)` this product is the one without a pole; bounded
/// sup norms (growth near or below 1) certify it.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityReport<T> {
    pub radii: Vec<T>,
    pub sup_norms: Vec<T>,
    /// Largest ratio between the sup norms on consecutive circles.
    pub growth: T,
}

/// Fit of `m(ζ) ≈ I + M₁/ζ` on integer-radius circles.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticsReport<T> {
    pub alpha: Cplx<T>,
    pub beta: Cplx<T>,
    pub gamma: Cplx<T>,
    pub delta: Cplx<T>,
    pub radii: Vec<i64>,
    /// Largest relative disagreement between the fits on different radii.
    pub spread: T,
}

fn mean_over_circle<T: Scalar>(
    center: Cplx<T>,
    radius: T,
    mut f: impl FnMut(Cplx<T>) -> Result<Mat2<T>>,
) -> Result<Mat2<T>> {
    let nodes = circle_nodes(center, radius, CONTOUR_NODES);
    let mut acc = Mat2::zero();
    for z in &nodes {
        acc = acc.add(&f(*z)?);
    }
    Ok(acc.scale(creal(T::one() / T::from_int(nodes.len() as i64))))
}

/// Compares `Res_{ζ=x} m`, by the trapezoid rule on `|ζ-x| = 1/4`, with
/// `lim_{ζ→x} m(ζ)w(x)`. Since `m(ζ)w(x)` only involves the column of `m`
/// that is regular at `x`, the limit is its mean over the same circle.
pub fn verify_residue<T, M>(m: &M, prob: &DiscreteRhp<'_, T>, x: HalfInteger) -> Result<ResidueReport<T>>
where
    T: Scalar,
    M: MatrixFunction<T> + ?Sized,
{
    let w = prob.jump(x)?;
    let center = creal(x.value::<T>());
    let r = T::lit(0.25);
    // (1/2πi)∮ m dζ = mean of m(ζ)(ζ-x)
    let residue = mean_over_circle(center, r, |z| Ok(m.eval(z)?.scale(z - center)))?;
    let limit = mean_over_circle(center, r, |z| Ok(m.eval(z)?.mul(&w)))?;
    let residual = residue.sub(&limit).max_abs();

    let mut radii = Vec::new();
    let mut sup_norms = Vec::new();
    let mut rr = r;
    for _ in 0..4 {
        let mut sup = T::zero();
        for z in circle_nodes(center, rr, CONTOUR_NODES) {
            let reg = Mat2::identity().sub(&w.scale(Cplx::new(T::one(), T::zero()) / (z - center)));
            sup = sup.max(m.eval(z)?.mul(&reg).max_abs());
        }
        radii.push(rr);
        sup_norms.push(sup);
        rr *= T::lit(0.5);
    }
    let growth = sup_norms.windows(2).map(|p| p[1] / p[0]).fold(T::zero(), T::max);
    Ok(ResidueReport { x2: x.doubled(), residual, regularity: RegularityReport { radii, sup_norms, growth } })
}

/// `max |det m(ζ) - 1|` over `points`.
pub fn det_residual<T, M>(m: &M, points: &[Cplx<T>]) -> Result<T>
where
    T: Scalar,
    M: MatrixFunction<T> + ?Sized,
{
    let mut worst = T::zero();
    for &z in points {
        worst = worst.max((m.eval(z)?.det() - creal(T::one())).norm());
    }
    Ok(worst)
}

/// `M₁` from the first Fourier mode of `m - I` on circles `|ζ| = R` for each
/// integer `R` in `radii`; these stay at distance `1/2` from `ℤ'`.
pub fn extract_asymptotics<T, M>(m: &M, radii: &[i64]) -> Result<AsymptoticsReport<T>>
where
    T: Scalar,
    M: MatrixFunction<T> + ?Sized,
{
    if radii.len() < 2 {
        return Err(numeric("extract_asymptotics", "need at least two radii"));
    }
    let fits = radii
        .iter()
        .map(|&r| mean_over_circle(Cplx::zero(), T::from_int(r), |z| Ok(m.eval(z)?.sub(&Mat2::identity()).scale(z))))
        .collect::<Result<Vec<_>>>()?;
    let last = *fits.last().expect("two radii");
    let scale = last.max_abs().max(T::lit(1e-12));
    let spread = fits.iter().map(|f| f.sub(&last).max_abs() / scale).fold(T::zero(), T::max);
    if spread > T::lit(1e-2) {
        return Err(numeric("extract_asymptotics", format!("fits on different radii disagree (relative spread {spread})")));
    }
    Ok(AsymptoticsReport {
        alpha: last.get(0, 0),
        beta: last.get(0, 1),
        gamma: last.get(1, 0),
        delta: last.get(1, 1),
        radii: radii.to_vec(),
        spread,
    })
}

/// `n` points off the real axis in the strip `|Re ζ| < 4.5`, for
/// unimodularity scans.
pub fn zeta_grid<T: Scalar>(n: usize) -> Vec<Cplx<T>> {
    (0..n)
        .map(|k| {
            let re = T::lit(-4.35) + T::lit(0.45) * T::from_int((k % 20) as i64);
            let im = T::lit(0.3) + T::lit(0.2) * T::from_int((k % 3) as i64);
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            Cplx::new(re, sign * im)
        })
        .collect()
}
