use approx::assert_relative_eq;
use drhp_core::drhp::{m_bessel, Branch, IdentitySolution};
use drhp_core::kernels::*;
use drhp_core::partitions::HalfInteger;
use drhp_core::resolvent::{build_l, resolvent_k, IntegrableData, Window};
use drhp_core::specialfn::gamma;
use drhp_core::Cplx;
use proptest::prelude::*;

fn hi(d: i64) -> HalfInteger {
    HalfInteger::from_doubled(d).unwrap()
}

fn theta(t: f64) -> ThetaParams<f64> {
    ThetaParams::new(t).unwrap()
}

// J_0(2), J_1(2), J_2(2)
const J0_2: f64 = 0.223_890_779_141_235_67;
const J1_2: f64 = 0.576_724_807_756_873_4;
const J2_2: f64 = 0.352_834_028_615_637_73;

#[test]
fn l_kernel_examples() {
    assert_eq!(l_kernel(hi(1), hi(3), theta(1.0)).unwrap(), 0.0);
    assert_relative_eq!(l_kernel(hi(1), hi(-1), theta(4.0)).unwrap(), 2.0, max_relative = 1e-15);
    assert_relative_eq!(l_kernel(hi(3), hi(-1), theta(1.0)).unwrap(), 0.5, max_relative = 1e-15);
}

#[test]
fn bessel_h_examples() {
    let h = h_bessel(theta(1.0));
    assert_relative_eq!(h.h(0.5).unwrap(), 1.0, max_relative = 1e-15);
    assert_relative_eq!(h.h(-0.5).unwrap(), 1.0, max_relative = 1e-15);
    // 2^{9/2}/4! = 16√2/24
    let h = h_bessel(theta(4.0));
    assert_relative_eq!(h.h(4.5).unwrap(), 16.0 * 2f64.sqrt() / 24.0, max_relative = 1e-14);
}

#[test]
fn discrete_bessel_off_diagonal_value() {
    // same-sign block at θ = 1: (J_0 J_2 - J_1²)(2) / (1/2 - 3/2)
    let oracle = (J0_2 * J2_2 - J1_2 * J1_2) / -1.0;
    let k = discrete_bessel_k(hi(1), hi(3), theta(1.0)).unwrap();
    assert_relative_eq!(k, oracle, max_relative = 1e-13);
    assert_relative_eq!(k, 0.253_615_218_307_906_4, max_relative = 1e-13);
    assert_eq!(k, discrete_bessel_k(hi(3), hi(1), theta(1.0)).unwrap());
}

#[test]
fn discrete_bessel_diagonal_matches_resolvent() {
    let p = theta(1.0);
    let h = h_bessel(p);
    let w = Window::new(40).unwrap();
    let r = resolvent_k(&build_l(&h, w).unwrap(), &IntegrableData::from_h(&h, w).unwrap()).unwrap();
    let i = w.index_of(hi(1)).unwrap();
    assert!((discrete_bessel_k(hi(1), hi(1), p).unwrap() - r.k.entries[(i, i)]).abs() <= 1e-8);
}

#[test]
fn bessel_kernel_reflection_symmetry() {
    for t in [0.25, 1.0, 4.0] {
        let p = theta(t);
        for a in (-11..=11).step_by(2) {
            for b in (-11..=11).step_by(2) {
                let k = discrete_bessel_k(hi(a), hi(b), p).unwrap();
                let r = discrete_bessel_k(hi(-b), hi(-a), p).unwrap();
                if Block::of(a as f64, b as f64).is_diagonal() {
                    assert!((k - r).abs() <= 1e-12, "θ = {t}, ({a}, {b})");
                }
            }
        }
    }
}

#[test]
fn identity_solution_reproduces_l() {
    let p = theta(2.0);
    let h = h_bessel(p);
    for a in (-7..=7).step_by(2) {
        for b in (-7..=7).step_by(2) {
            let l = l_kernel(hi(a), hi(b), p).unwrap();
            let k = assemble_from_solution(&IdentitySolution, &h, a as f64 / 2.0, b as f64 / 2.0).unwrap();
            assert!((k - l).abs() <= 1e-14 * l.abs().max(1.0), "({a}, {b}): {k} vs {l}");
        }
    }
}

#[test]
fn bessel_solution_assembles_the_bessel_kernel() {
    let p = theta(1.0);
    let m = m_bessel(p, Branch::Minus);
    let k = assemble_from_solution(&m, &h_bessel(p), 0.5, -0.5).unwrap();
    assert!((k - discrete_bessel_k(hi(1), hi(-1), p).unwrap()).abs() <= 1e-9);
}

#[test]
fn zmeasure_h_values() {
    let zp = ZParams::complementary(0.4, 0.6, 0.3).unwrap();
    let h = h_zmeasure(zp).unwrap();
    let want = (0.4 * 0.6 * 0.3f64).powf(0.25) * 0.7f64.powf(0.5);
    assert_relative_eq!(h.h(0.5).unwrap(), want, max_relative = 1e-13);

    let zp = ZParams::principal(Cplx::new(1.0, 2.0), 0.3).unwrap();
    let h = h_zmeasure(zp).unwrap();
    for d in (-21..=21).step_by(2) {
        let v = h.h(d as f64 / 2.0).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }
}

#[test]
fn zmeasure_h_degenerates_to_bessel_h() {
    let z = 1e4 + 0.5;
    let zp = ZParams::complementary(z, z, 1.0 / (z * z)).unwrap();
    let hd = h_zmeasure(zp).unwrap().h(0.5).unwrap();
    let hb = h_bessel(theta(1.0)).h(0.5).unwrap();
    assert!((hd - hb).abs() <= 2e-4, "{hd} vs {hb}");
}

#[test]
fn whittaker_h_values() {
    let (z, zp) = (0.3f64, 0.4f64);
    let h = h_whittaker_continuous(ZParams::complementary(z, zp, 0.5).unwrap()).unwrap();
    assert!(h.h(1e-12).unwrap() < 1e-4);
    let g = gamma(z + 1.0).unwrap() * gamma(zp + 1.0).unwrap() * gamma(1.0 - z).unwrap() * gamma(1.0 - zp).unwrap();
    let want = (z * zp).sqrt() * (-1.0f64).exp() / g.sqrt();
    assert_relative_eq!(h.h(1.0).unwrap() * h.h(-1.0).unwrap(), want, max_relative = 1e-13);
    assert!(h.h_plus(-1.0).is_err() && h.h_minus(1.0).is_err());
}

#[test]
fn whittaker_kernel_regression_values() {
    let zp = ZParams::complementary(0.3, 0.4, 0.5).unwrap();
    assert_relative_eq!(whittaker_kernel(1.0, 2.0, zp).unwrap(), 0.015_255_569_397_041_762, max_relative = 1e-9);
    let d: f64 = whittaker_kernel(1.0, 1.0, zp).unwrap();
    assert!(d.is_finite());
    assert_relative_eq!(d, 0.036_846_615_364_121_45, max_relative = 1e-9);
}

#[test]
fn hypergeometric_kernel_near_bessel_kernel() {
    let z = 1e3 + 0.5;
    let zp = ZParams::complementary(z, z, 1.0 / (z * z)).unwrap();
    let k = hypergeometric_kernel_evaluator(zp).unwrap();
    let p = theta(1.0);
    for a in (-5..=5).step_by(2) {
        for b in (-5..=5).step_by(2) {
            let d = (k.eval(hi(a), hi(b)).unwrap() - discrete_bessel_k(hi(a), hi(b), p).unwrap()).abs();
            assert!(d <= 5e-3, "({a}, {b}): {d}");
        }
    }
}

#[test]
fn hat_kernel_is_minus_the_plus_branch_assembly() {
    let p = theta(1.0);
    let hat = bessel_hat_kernel(p);
    let direct = -assemble_from_solution(&m_bessel(p, Branch::Plus), &h_bessel(p), 1.5, -0.5).unwrap();
    assert_eq!(hat.eval(hi(3), hi(-1)).unwrap(), direct);
}

#[test]
fn invalid_parameters_rejected() {
    assert!(ThetaParams::new(0.0f64).is_err());
    assert!(ZParams::complementary(0.4f64, 1.6, 0.3).is_err());
    assert!(ZParams::complementary(1.0f64, 1.0, 0.3).is_err());
    assert!(ZParams::complementary(0.4f64, 0.6, 1.0).is_err());
    assert!(ZParams::principal(Cplx::new(2.0f64, 0.0), 0.5).is_err());
}

#[test]
fn single_precision_kernel() {
    let p = ThetaParams::new(1.0f32).unwrap();
    let k = discrete_bessel_k(hi(1), hi(3), p).unwrap();
    assert!((k - 0.253_615_2).abs() < 1e-5);
}

proptest! {
    #[test]
    fn prop_l_skew_symmetric_bessel(t in 0.05f64..6.0, a in -15i64..15, b in -15i64..15) {
        let p = theta(t);
        let (x, y) = (hi(2 * a + 1), hi(2 * b + 1));
        let l = l_kernel(x, y, p).unwrap();
        prop_assert!((l + l_kernel(y, x, p).unwrap()).abs() <= 1e-15 * l.abs().max(1e-300));
    }

    #[test]
    fn prop_l_skew_symmetric_zmeasure(z in 0.05f64..0.95, zp in 0.05f64..0.95, xi in 0.05f64..0.9, n in 1usize..6) {
        let h = h_zmeasure(ZParams::complementary(z, zp, xi).unwrap()).unwrap();
        let w = Window::new(n).unwrap();
        let l = drhp_core::resolvent::build_l_unchecked(&h, w).unwrap();
        let s = l.entries.add(&l.entries.transpose()).max_abs();
        prop_assert!(s <= 1e-15 * l.entries.max_abs().max(1.0));
    }

    #[test]
    fn prop_l_skew_symmetric_whittaker(x in 0.1f64..8.0, y in -8.0f64..-0.1, z in 0.05f64..0.95, zp in 0.05f64..0.95) {
        let h = h_whittaker_continuous(ZParams::complementary(z, zp, 0.5).unwrap()).unwrap();
        let a = assemble_from_solution(&IdentitySolution, &h, x, y).unwrap();
        let b = assemble_from_solution(&IdentitySolution, &h, y, x).unwrap();
        prop_assert!((a + b).abs() <= 1e-14 * a.abs().max(1e-300));
        let same = assemble_from_solution(&IdentitySolution, &h, x, x + 0.5).unwrap();
        prop_assert_eq!(same, 0.0);
    }
}
