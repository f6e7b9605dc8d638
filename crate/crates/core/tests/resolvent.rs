use drhp_core::drhp::m_hypergeometric;
use drhp_core::kernels::{discrete_bessel_k, h_bessel, h_zmeasure, kernel_matrix, ThetaParams, ZParams};
use drhp_core::partitions::HalfInteger;
use drhp_core::resolvent::*;
use drhp_core::Cplx;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn theta(t: f64) -> ThetaParams<f64> {
    ThetaParams::new(t).unwrap()
}

fn bessel_resolvent(t: f64, n: usize) -> (WindowedOperator<f64>, Resolvent<f64>) {
    let h = h_bessel(theta(t));
    let w = Window::new(n).unwrap();
    let l = build_l(&h, w).unwrap();
    let r = resolvent_k(&l, &IntegrableData::from_h(&h, w).unwrap()).unwrap();
    (l, r)
}

fn to_nalgebra(m: &WindowedOperator<f64>) -> DMatrix<f64> {
    let n = m.window.len();
    DMatrix::from_fn(n, n, |i, j| m.entries[(i, j)])
}

#[test]
fn resolvent_matches_closed_form_bessel_kernel() {
    for t in [0.25, 1.0, 4.0] {
        let (_, r) = bessel_resolvent(t, 40);
        let w = r.k.window;
        let mut diff = 0.0f64;
        for (i, x) in w.points().enumerate() {
            for (j, y) in w.points().enumerate() {
                diff = diff.max((r.k.entries[(i, j)] - discrete_bessel_k(x, y, theta(t)).unwrap()).abs());
            }
        }
        assert!(diff <= 1e-8, "θ = {t}: {diff}");
    }
}

#[test]
fn resolvent_is_stable_under_window_growth() {
    let inner = Window::new(10).unwrap();
    for t in [0.25, 1.0, 4.0] {
        let a = bessel_resolvent(t, 40).1.k.restrict(inner).unwrap();
        let b = bessel_resolvent(t, 50).1.k.restrict(inner).unwrap();
        assert!(a.entries.sub(&b.entries).max_abs() < 1e-12, "θ = {t}");
    }
}

#[test]
fn identity_plus_l_is_well_conditioned() {
    // L is skew, so (I+L)ᵗ(I+L) = I + LᵗL and every singular value is >= 1
    for t in [0.25, 1.0, 4.0] {
        let (l, r) = bessel_resolvent(t, 40);
        let a = DMatrix::identity(l.window.len(), l.window.len()) + to_nalgebra(&l);
        let smin = a.singular_values().min();
        assert!(smin >= 1.0 - 1e-12, "θ = {t}: {smin}");
        assert!(r.condition < CONDITION_LIMIT);
    }
}

#[test]
fn integrable_structure_of_resolvent() {
    for t in [0.25, 1.0, 4.0] {
        let (l, r) = bessel_resolvent(t, 40);
        let s = check_integrable_structure(&l, &r);
        assert!(s.off_diagonal <= 1e-10 && s.diagonal <= 1e-10 && s.orthogonality <= 1e-10, "θ = {t}: {s:?}");
    }
}

#[test]
fn smallest_window() {
    let h = h_bessel(theta(1.0));
    let w = Window::new(1).unwrap();
    let l = build_l_unchecked(&h, w).unwrap();
    let r = resolvent_k(&l, &IntegrableData::from_h(&h, w).unwrap()).unwrap();
    assert_eq!(l.window.len(), 2);
    // L = [[0, -a], [a, 0]] with a = h(1/2)h(-1/2) = 1, so K = L(1+L)⁻¹ = [[1, -1], [1, 1]]/2
    let half = HalfInteger::plus_half(0);
    let neg = HalfInteger::plus_half(-1);
    assert!((l.get(half, neg).unwrap() - 1.0).abs() < 1e-15);
    assert!((r.k.get(half, half).unwrap() - 0.5).abs() < 1e-15);
    assert!((r.k.get(half, neg).unwrap() - 0.5).abs() < 1e-15);
    assert!((r.k.get(neg, half).unwrap() + 0.5).abs() < 1e-15);
}

#[test]
fn window_zero_is_rejected() {
    assert!(Window::new(0).is_err());
}

#[test]
fn l_entry_example() {
    let h = h_bessel(theta(4.0));
    let l = build_l(&h, Window::new(30).unwrap()).unwrap();
    assert!((l.get(HalfInteger::plus_half(0), HalfInteger::plus_half(-1)).unwrap() - 2.0).abs() < 1e-14);
}

#[test]
fn truncation_gate() {
    let h = h_bessel(theta(4.0));
    assert!(build_l(&h, Window::new(5).unwrap()).is_err());
    assert!(build_l_unchecked(&h, Window::new(5).unwrap()).is_ok());
    assert!(boundary_mass(&build_l(&h, Window::new(30).unwrap()).unwrap()) <= BOUNDARY_MASS_LIMIT);
}

#[test]
fn zero_operator() {
    let w = Window::new(4).unwrap();
    let l = WindowedOperator::<f64>::zeros(w);
    let r = resolvent_k(&l, &IntegrableData::zeros(w)).unwrap();
    assert_eq!(r.k.entries.max_abs(), 0.0);
    assert_eq!(hat_k(&l).unwrap().entries.max_abs(), 0.0);
}

#[test]
fn hat_resolvent_relation() {
    let (l, _) = bessel_resolvent(1.0, 30);
    let hat = hat_k(&l).unwrap();
    let n = l.window.len();
    let lm = l.entries.sub(&drhp_core::linalg::DenseMatrix::identity(n));
    assert!(hat.entries.matmul(&lm).sub(&l.entries).max_abs() < 1e-13);
}

#[test]
fn hilbert_transform_examples() {
    let w = Window::new(1).unwrap();
    // one term: (Th)(1/2) = h(-1/2)/1
    let th = apply_t(&[1.0, 0.0], w).unwrap();
    assert_eq!(th, vec![0.0, 1.0]);
    assert!(apply_t(&[1.0], w).is_err());

    let w = Window::new(6).unwrap();
    let xs: Vec<f64> = w.values();
    let even: Vec<f64> = xs.iter().map(|x| (-x * x).exp()).collect();
    let th = apply_t(&even, w).unwrap();
    let n = w.len();
    for i in 0..n {
        assert!((th[i] + th[n - 1 - i]).abs() < 1e-15);
    }
}

#[test]
fn hilbert_transform_norm_bound() {
    let w = Window::new(20).unwrap();
    let n = w.len();
    let xs: Vec<f64> = w.values();
    let t = DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { 1.0 / (xs[i] - xs[j]) });
    let exact = t.singular_values().max();
    assert!(exact <= std::f64::consts::PI + 0.1);
    let est: f64 = t_operator_norm(w, 200).unwrap();
    assert!((est - exact).abs() < 1e-6 * exact, "{est} vs {exact}");
}

#[test]
fn hypergeometric_resolvent_matches_closed_form() {
    let settings = [
        ZParams::complementary(0.4, 0.6, 0.3).unwrap(),
        ZParams::principal(Cplx::new(1.0, 2.0), 0.5).unwrap(),
    ];
    let inner = Window::new(30).unwrap();
    for zp in settings {
        let h = h_zmeasure(zp).unwrap();
        let outer = fit_window(&h, 30, 400).unwrap();
        let l = build_l(&h, outer).unwrap();
        let r = resolvent_k(&l, &IntegrableData::from_h(&h, outer).unwrap()).unwrap();
        let closed = kernel_matrix(&m_hypergeometric(zp).unwrap(), &h, inner).unwrap();
        let diff = closed.entries.sub(&r.k.restrict(inner).unwrap().entries).max_abs();
        assert!(diff <= 1e-8, "{zp:?}: {diff}");
        let s = check_integrable_structure(&l, &r);
        assert!(s.off_diagonal <= 1e-10 && s.diagonal <= 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn prop_l_is_skew(t in 0.05f64..6.0) {
        let (l, _) = bessel_resolvent(t, 30);
        prop_assert_eq!(l.entries.add(&l.entries.transpose()).max_abs(), 0.0);
    }

    #[test]
    fn prop_resolvent_identity(t in 0.05f64..6.0) {
        // K + LK = L
        let (l, r) = bessel_resolvent(t, 30);
        let res = r.k.entries.add(&l.entries.matmul(&r.k.entries)).sub(&l.entries).max_abs();
        prop_assert!(res < 1e-12);
    }
}
