//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands of
//! a real variable, plus the periodic trapezoid rule on circles.

use num_traits::Zero;

use crate::error::{accuracy, Result};
use crate::scalar::{cplx, Cplx, Scalar};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy)]
struct Segment<T: Scalar> {
    a: T,
    b: T,
    value: Cplx<T>,
    error: T,
}

fn kronrod<T: Scalar, F>(f: &mut F, a: T, b: T) -> Result<Segment<T>>
where
    F: FnMut(T) -> Result<Cplx<T>>,
{
    let half = T::lit(0.5);
    let center = half * (a + b);
    let h = half * (b - a);
    let fc = f(center)?;
    let mut k = fc * T::lit(WGK[7]);
    let mut g = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = h * T::lit(XGK[j]);
        let s = f(center - dx)? + f(center + dx)?;
        k += s * T::lit(WGK[j]);
        if j % 2 == 1 {
            g += s * T::lit(WG[j / 2]);
        }
    }
    let value = k * h;
    let error = ((k - g) * h).norm();
    Ok(Segment { a, b, value, error })
}

/// Integrates `f` over `[a, b]` until the summed error estimate is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T, F>(mut f: F, a: T, b: T, abs_tol: T, rel_tol: T, max_segments: usize) -> Result<Cplx<T>>
where
    T: Scalar,
    F: FnMut(T) -> Result<Cplx<T>>,
{
    let mut segs = vec![kronrod(&mut f, a, b)?];
    loop {
        let total: Cplx<T> = segs.iter().fold(Cplx::zero(), |acc, s| acc + s.value);
        let err: T = segs.iter().fold(T::zero(), |acc, s| acc + s.error);
        if err <= abs_tol.max(rel_tol * total.norm()) {
            return Ok(total);
        }
        if segs.len() >= max_segments {
            return Err(accuracy(
                "integrate",
                format!("error estimate {err} after {max_segments} segments (integral {total})"),
            ));
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .fold((0, T::zero()), |(bi, be), (i, s)| if s.error > be { (i, s.error) } else { (bi, be) });
        let s = segs.swap_remove(worst);
        let mid = T::lit(0.5) * (s.a + s.b);
        segs.push(kronrod(&mut f, s.a, mid)?);
        segs.push(kronrod(&mut f, mid, s.b)?);
    }
}

/// Points `center + r e^{2πik/n}`, `k = 0..n`.
pub fn circle_nodes<T: Scalar>(center: Cplx<T>, radius: T, n: usize) -> Vec<Cplx<T>> {
    (0..n)
        .map(|k| {
            let phi = T::TAU() * T::from_int(k as i64) / T::from_int(n as i64);
            center + cplx(radius * phi.cos(), radius * phi.sin())
        })
        .collect()
}

/// Trapezoid rule for `(1/2πi) ∮ f(ζ) dζ` on a circle. Spectrally accurate
/// for integrands analytic in an annulus around the contour.
pub fn contour_integral<T, F>(mut f: F, center: Cplx<T>, radius: T, n: usize) -> Result<Cplx<T>>
where
    T: Scalar,
    F: FnMut(Cplx<T>) -> Result<Cplx<T>>,
{
    let mut acc = Cplx::zero();
    for z in circle_nodes(center, radius, n) {
        acc += f(z)? * (z - center);
    }
    Ok(acc / T::from_int(n as i64))
}
