//! Special functions against reference values (computed with an
//! arbitrary-precision library, rounded to f64) and against independent
//! closed forms and finite-difference oracles implemented here.

#![allow(clippy::excessive_precision)]

use approx::assert_relative_eq;
use drhp_core::specialfn::*;
use drhp_core::Cplx;
use proptest::prelude::*;

#[test]
fn bessel_reference_values() {
    let cases = [
        (0.3, 0.5, 0.700_260_488_507_054_7),
        (2.7, 3.0, 0.372_470_145_630_028),
        (-1.3, 3.0, -0.106_536_302_179_580_45),
        (10.5, 12.0, 0.294_699_684_097_684_54),
        (-7.6, 2.0, -803.117_289_320_626_9),
        (0.0, 12.0, 0.047_689_310_796_833_535),
        (-7.0, 5.0, -0.053_376_410_155_890_716),
    ];
    for (nu, x, want) in cases {
        assert_relative_eq!(bessel_j(nu, x).unwrap(), want, max_relative = 1e-11);
    }
}

#[test]
fn order_derivative_reference_values() {
    let cases = [
        (0.5, 2.0, 0.340_475_087_040_769_56),
        (2.5, 3.0, -0.192_038_042_727_917_66),
        (-1.5, 2.0, -1.042_804_332_310_61),
        (-3.0, 1.5, 6.422_338_392_968_844),
        (7.5, 4.0, -0.010_560_780_977_711_749),
    ];
    for (nu, x, want) in cases {
        assert_relative_eq!(bessel_j_dnu(nu, x).unwrap(), want, max_relative = 1e-10);
    }
}

/// Richardson-extrapolated central difference in the order.
fn dnu_fd(nu: f64, x: f64, h: f64) -> f64 {
    let d = |h: f64| (bessel_j(nu + h, x).unwrap() - bessel_j(nu - h, x).unwrap()) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

#[test]
fn order_derivative_matches_finite_differences() {
    for (nu, x) in [(0.5, 2.0), (2.5, 3.0), (-2.3, 1.1), (13.5, 6.0)] {
        assert_relative_eq!(bessel_j_dnu(nu, x).unwrap(), dnu_fd(nu, x, 1e-4), max_relative = 1e-8);
    }
}

#[test]
fn integer_order_symmetry() {
    for n in 0..=6i32 {
        for x in [0.5, 2.0, 5.0] {
            let a = bessel_j(-(n as f64), x).unwrap();
            let b = bessel_j(n as f64, x).unwrap();
            assert!((a - (-1f64).powi(n) * b).abs() <= 1e-10, "n = {n}, x = {x}");
        }
    }
}

fn sqrt_eta_j(nu: f64, eta: f64) -> f64 {
    eta.sqrt() * bessel_j(nu, 2.0 * eta).unwrap()
}

#[test]
fn differentiation_pair_in_eta() {
    let step = 1e-4;
    for nu in [-2.5, -0.5, 0.5, 1.5, 4.5, 0.3] {
        for eta in [0.5, 1.0, 2.0] {
            let fd = (sqrt_eta_j(nu, eta + step) - sqrt_eta_j(nu, eta - step)) / (2.0 * step);
            let j = |n: f64| bessel_j(n, 2.0 * eta).unwrap();
            let s = eta.sqrt();
            let up = (nu + 0.5) / s * j(nu) - 2.0 * s * j(nu + 1.0);
            let down = (-nu + 0.5) / s * j(nu) + 2.0 * s * j(nu - 1.0);
            assert_relative_eq!(fd, up, max_relative = 1e-6);
            assert_relative_eq!(fd, down, max_relative = 1e-6);
        }
    }
}

#[test]
fn half_order_and_log_closed_forms() {
    let x = 2.0f64;
    assert_relative_eq!(bessel_j(0.5, x).unwrap(), (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin(), max_relative = 1e-13);
    assert_relative_eq!(gauss_2f1(1.0, 1.0, 2.0, -0.5).unwrap(), 1.5f64.ln() / 0.5, max_relative = 1e-13);
}

#[test]
fn hypergeometric_reference_values() {
    let cases = [
        (0.3, 0.7, 1.1, -0.4, 0.936_389_313_636_560_5),
        (0.4, -0.6, 1.3, -7.5, 1.936_065_834_158_634_3),
        (1.2, 2.3, 0.8, 0.7, 38.502_484_284_387_194),
        (0.25, 0.6, 1.0, -150.0, 0.374_131_635_100_010_85),
        (0.3, 0.7, 1.1, -4.0, 0.711_730_158_327_685_3),
        (1.5, 1.5, 2.7, -20.0, 0.047_062_962_449_472_83),
    ];
    for (a, b, c, v, want) in cases {
        assert_relative_eq!(gauss_2f1(a, b, c, v).unwrap(), want, max_relative = 1e-10);
    }
    let z = Cplx::new(1.0, 2.0);
    let r = gauss_2f1_complex(-z, -z.conj(), Cplx::new(0.8, 0.0), -3.0).unwrap();
    assert_relative_eq!(r.re, 1.659_691_326_943_912_2, max_relative = 1e-10);
}

#[test]
fn pfaff_region_against_long_raw_series() {
    // F(a,b;c;v) = (1-v)^{-a} Σ (a)_k (c-b)_k / ((c)_k k!) t^k with t = v/(v-1)
    let (a, b, c, v) = (0.3f64, 0.7, 1.1, -4.0);
    let t = v / (v - 1.0);
    let (mut term, mut sum) = (1.0f64, 0.0f64);
    for k in 0..5000 {
        sum += term;
        let k = k as f64;
        term *= (a + k) * (c - b + k) / ((c + k) * (k + 1.0)) * t;
    }
    let oracle = (1.0 - v).powf(-a) * sum;
    assert_relative_eq!(gauss_2f1(a, b, c, v).unwrap(), oracle, max_relative = 1e-11);
}

#[test]
fn whittaker_reference_values() {
    let cases = [
        (0.85, 0.05, 1.7, 0.627_787_238_640_682_5),
        (-0.4, 0.3, 5.0, 0.038_374_362_804_208_63),
        (1.6, 0.25, 0.4, -0.379_393_183_036_693_84),
        (0.2, 0.1, 40.0, 4.302_000_178_019_173e-9),
        (0.0, 0.5, 2.0, 0.367_879_441_171_442_33),
        (0.3, 0.2, 0.05, 0.397_039_430_500_825_4),
    ];
    for (k, m, v, want) in cases {
        assert_relative_eq!(whittaker_w(k, m, v).unwrap(), want, max_relative = 1e-9);
    }
}

/// `Γ(s, x)` by the Legendre continued fraction (modified Lentz), `x > 0`.
fn upper_incomplete_gamma(s: f64, x: f64) -> f64 {
    let tiny = 1e-300;
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        c = b + an / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x + s * x.ln()).exp() * h
}

#[test]
fn whittaker_with_unit_first_parameter_matches_incomplete_gamma() {
    // a = μ - κ + 1/2 = 1: U(1, b, v) = v^{1-b} e^v Γ(b-1, v), b = 1 + 2μ
    for (mu, v) in [(0.7f64, 1.3f64), (-0.325, 3.1), (0.2, 6.0), (1.4, 2.2)] {
        let kappa = mu - 0.5;
        let b = 1.0 + 2.0 * mu;
        let u = v.powf(1.0 - b) * v.exp() * upper_incomplete_gamma(b - 1.0, v);
        let oracle = (-v / 2.0).exp() * v.powf(mu + 0.5) * u;
        assert_relative_eq!(whittaker_w(kappa, mu, v).unwrap(), oracle, max_relative = 1e-9);
    }
    // the same oracle pins the reference values
    assert_relative_eq!(upper_incomplete_gamma(1.4, 1.3) * 1.3f64.powf(-1.4) * 1.3f64.exp(), 0.948_900_896_108_196, max_relative = 1e-12);
    assert_relative_eq!(upper_incomplete_gamma(-0.65, 3.1) * 3.1f64.powf(0.65) * 3.1f64.exp(), 0.223_359_656_658_861_34, max_relative = 1e-12);
}

#[test]
fn whittaker_large_argument_asymptotics() {
    let (k, m, v): (f64, f64, f64) = (0.2, 0.1, 40.0);
    let lead = (-v / 2.0).exp() * v.powf(k);
    assert_relative_eq!(whittaker_w(k, m, v).unwrap(), lead, max_relative = 0.05);
}

#[test]
fn gamma_reference_values() {
    assert_relative_eq!(ln_gamma(0.1f64).unwrap().ln_abs, 2.252_712_651_734_206, max_relative = 1e-14);
    assert_relative_eq!(gamma(-2.5f64).unwrap(), -0.945_308_720_482_941_9, max_relative = 1e-13);
    let lg = ln_gamma_complex(Cplx::new(3.3f64, -4.1)).unwrap();
    assert_relative_eq!(lg.re, -1.382_772_230_908_218_4, max_relative = 1e-13);
    // the imaginary part is a branch choice
    let turns = (lg.im + 5.197_257_094_873_104) / std::f64::consts::TAU;
    assert!((turns - turns.round()).abs() < 1e-13);
}

#[test]
fn gamma_recurrence_on_spec_points() {
    for x in [0.1f64, 0.5, 1.7, 9.3] {
        let lhs = ln_gamma(x + 1.0).unwrap().value();
        let rhs = x * ln_gamma(x).unwrap().value();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }
}

#[test]
fn single_precision_instantiation() {
    let j = bessel_j(0.0f32, 2.0).unwrap();
    assert!((j - 0.223_890_78).abs() < 1e-5);
    let f = gauss_2f1(1.0f32, 1.0, 2.0, -0.5).unwrap();
    assert!((f - 0.810_930_2).abs() < 1e-5);
}

proptest! {
    #[test]
    fn prop_gamma_recurrence(x in 0.05f64..30.0) {
        let lhs = ln_gamma(x + 1.0).unwrap().ln_abs;
        let rhs = ln_gamma(x).unwrap().ln_abs + x.ln();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn prop_reciprocal_gamma_inverts_gamma(x in -8.0f64..12.0) {
        prop_assume!((x - x.round()).abs() > 1e-3 || x > 0.5);
        let g = ln_gamma(x).unwrap().value();
        prop_assert!((reciprocal_gamma(x) * g - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn prop_three_term_recurrence(nu in -15.0f64..15.0, eta in 0.2f64..4.0) {
        let j = |n: f64| bessel_j(n, 2.0 * eta).unwrap();
        let lhs = j(nu - 1.0) + j(nu + 1.0);
        let rhs = nu / eta * j(nu);
        let scale = j(nu - 1.0).abs().max(j(nu + 1.0).abs()).max(1e-300);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale, "lhs {lhs} rhs {rhs}");
    }

    #[test]
    fn prop_gauss_symmetric_in_numerator_parameters(
        a in -2.5f64..2.5, b in -2.5f64..2.5, c in 0.1f64..3.0, v in -30.0f64..0.6,
    ) {
        let x = gauss_2f1(a, b, c, v);
        let y = gauss_2f1(b, a, c, v);
        match (x, y) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.to_bits(), y.to_bits()),
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }

    #[test]
    fn prop_bessel_complex_order_agrees_on_real_axis(nu in -12.0f64..12.0, x in 0.1f64..8.0) {
        let c = bessel_j_complex(Cplx::new(nu, 0.0), x).unwrap();
        let r = bessel_j(nu, x).unwrap();
        prop_assert!((c.re - r).abs() <= 1e-12 * r.abs().max(1.0));
    }
}
