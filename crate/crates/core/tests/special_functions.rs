use std::f64::consts::{FRAC_PI_2, PI};

use approx::assert_relative_eq;
use elliptic_lab_core::elliptic::{
    complete_k_comp, incomplete_f, invert_lambda_ratio, lambda_ratio, landen_descend,
};
use elliptic_lab_core::legendre::{
    p_quarter, p_quarter_integral, p_quarter_series, p_quarter_via_k, LegendreArg,
};
use elliptic_lab_core::{agm, complete_k, Modulus};
use proptest::prelude::*;

/// `K(k)` by the trapezoid rule in `θ`; spectrally accurate for `k < 1`.
fn k_trapezoid(k: f64) -> f64 {
    let n = 2000;
    let h = FRAC_PI_2 / n as f64;
    let f = |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt();
    h * (0.5 * f(0.0) + (1..n).map(|i| f(i as f64 * h)).sum::<f64>() + 0.5 * f(FRAC_PI_2))
}

/// Gauss series with plain term accumulation, no early exit.
fn series_oracle(t: f64) -> f64 {
    let (mut sum, mut term) = (1.0, 1.0);
    for n in 0..5000 {
        let nf = n as f64;
        term *= (nf + 0.25) * (nf + 0.75) / ((nf + 1.0) * (nf + 1.0)) * t;
        sum += term;
    }
    sum
}

#[test]
fn k_grid_against_trapezoid() {
    for i in 1..=19 {
        let k = i as f64 / 20.0;
        let agm_k = complete_k(Modulus::new(k).unwrap()).unwrap();
        assert_relative_eq!(agm_k, k_trapezoid(k), max_relative = 1e-12);
    }
}

#[test]
fn k_limits() {
    assert_eq!(complete_k(Modulus::new(0.0).unwrap()).unwrap(), FRAC_PI_2);
    assert!(complete_k(Modulus::new(1.0).unwrap()).is_err());
    // K(k) ~ ln(4/k') as k' -> 0
    let m = Modulus::from_complement(1e-10).unwrap();
    let k = complete_k(m).unwrap();
    assert!((k - (4e10f64).ln()).abs() < 1e-9, "{k}");
}

#[test]
fn lambda_inversion_range() {
    assert!(invert_lambda_ratio(1e-3).is_err());
    assert!(invert_lambda_ratio(4e3).is_err());
    let m = invert_lambda_ratio(0.005).unwrap();
    assert!((lambda_ratio(m).unwrap() - 0.005).abs() < 1e-12);
    let m = invert_lambda_ratio(800.0).unwrap();
    assert!(m.kc() > 0.0 && m.kc() < 1e-250);
    assert!((lambda_ratio(m).unwrap() - 800.0).abs() < 1e-9);
}

#[test]
fn legendre_grid_matches_oracle() {
    for i in 0..=15 {
        let t = i as f64 * 0.05;
        let arg = LegendreArg::new(t).unwrap();
        assert_relative_eq!(
            p_quarter_series(arg).unwrap(),
            series_oracle(t),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            p_quarter(arg).unwrap(),
            series_oracle(t),
            max_relative = 1e-14
        );
    }
}

#[test]
fn legendre_bridge_beyond_series() {
    for t in [0.8, 0.9, 0.95, 0.999] {
        let arg = LegendreArg::new(t).unwrap();
        let bridge = p_quarter_via_k(arg).unwrap();
        let integral = p_quarter_integral(arg).unwrap();
        assert_relative_eq!(bridge, integral, max_relative = 1e-10);
    }
}

#[test]
fn legendre_logarithmic_growth() {
    // P_{-1/4}(1-2t) ~ (√2/π) ln(8/(1-t))·... grows without bound as t -> 1
    let near = p_quarter(LegendreArg::new(1.0 - 1e-12).unwrap()).unwrap();
    assert!(near > 5.0 && near.is_finite());
    let lead = 2f64.sqrt() / PI * (64.0 / 1e-12f64).ln() / 2.0;
    assert!((near - lead).abs() < 1e-3 * lead, "{near} {lead}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn agm_is_symmetric_and_homogeneous(a in 0.01f64..10.0, b in 0.01f64..10.0, s in 0.1f64..10.0) {
        let m = agm(a, b).unwrap();
        prop_assert!((m - agm(b, a).unwrap()).abs() <= 4.0 * f64::EPSILON * m);
        prop_assert!((agm(s * a, s * b).unwrap() - s * m).abs() <= 8.0 * f64::EPSILON * s * m);
        prop_assert!(a.min(b) <= m && m <= a.max(b));
    }

    #[test]
    fn k_increases_with_modulus(k1 in 0.0f64..0.999, dk in 1e-6f64..1e-3) {
        let k2 = (k1 + dk).min(0.9999);
        prop_assume!(k2 > k1);
        let a = complete_k(Modulus::new(k1).unwrap()).unwrap();
        let b = complete_k(Modulus::new(k2).unwrap()).unwrap();
        prop_assert!(b > a);
        prop_assert!(a >= FRAC_PI_2);
    }

    #[test]
    fn complement_swaps_k_and_k_prime(k in 0.001f64..0.999) {
        let m = Modulus::new(k).unwrap();
        let kp = complete_k_comp(m).unwrap();
        prop_assert!((kp - complete_k(m.complement()).unwrap()).abs() <= 1e-15 * kp);
        prop_assert_eq!(m.complement().complement(), m);
    }

    #[test]
    fn incomplete_f_reaches_k(k in 0.0f64..0.99) {
        let m = Modulus::new(k).unwrap();
        let f = incomplete_f(FRAC_PI_2, m).unwrap();
        let kk = complete_k(m).unwrap();
        prop_assert!((f - kk).abs() <= 1e-11 * kk);
    }

    #[test]
    fn incomplete_f_grows_with_phi(phi in 0.01f64..1.5, dphi in 1e-3f64..0.07, k in 0.0f64..0.95) {
        let m = Modulus::new(k).unwrap();
        let f = incomplete_f(phi, m).unwrap();
        prop_assert!(f >= phi * (1.0 - 1e-14));
        prop_assert!(incomplete_f(phi + dphi, m).unwrap() > f);
    }

    #[test]
    fn landen_holds(s in 1e-6f64..0.999_999) {
        let (lhs, rhs) = landen_descend(s).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * lhs);
    }

    #[test]
    fn lambda_roundtrip(log_l in -5.0f64..6.5) {
        let lambda = log_l.exp();
        let m = invert_lambda_ratio(lambda).unwrap();
        prop_assert!((lambda_ratio(m).unwrap() - lambda).abs() <= 1e-10 * lambda);
    }

    #[test]
    fn lambda_ratio_reflection(log_l in -4.0f64..4.0) {
        // 2K(k')/K'(k') = 4 / (2K(k)/K'(k))
        let m = invert_lambda_ratio(log_l.exp()).unwrap();
        let product = lambda_ratio(m).unwrap() * lambda_ratio(m.complement()).unwrap();
        prop_assert!((product - 4.0).abs() <= 1e-13);
    }

    #[test]
    fn series_and_integral_agree(t in 0.0f64..0.75) {
        let arg = LegendreArg::new(t).unwrap();
        let s = p_quarter_series(arg).unwrap();
        prop_assert!((s - p_quarter_integral(arg).unwrap()).abs() <= 1e-11 * s);
        prop_assert!((s - p_quarter_via_k(arg).unwrap()).abs() <= 1e-13 * s);
    }

    #[test]
    fn legendre_increasing(t in 0.0f64..0.99, dt in 1e-4f64..1e-2) {
        let t2 = (t + dt).min(0.999);
        let a = p_quarter(LegendreArg::new(t).unwrap()).unwrap();
        let b = p_quarter(LegendreArg::new(t2).unwrap()).unwrap();
        prop_assert!(b > a && a >= 1.0);
    }
}
