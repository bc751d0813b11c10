//! Trapped-hydrogen purity: validation of the closed-form overlap against
//! direct 3-D integration, and of the factorized purity against its closed form.

use std::f64::consts::PI;

use coboson::quadrature::{integrate_to_infinity, Tolerance};
use coboson::wavefunction::{purity_prefactor, HydrogenTrapModel};

fn model(b_over_a0: f64) -> HydrogenTrapModel {
    HydrogenTrapModel::from_ratio(b_over_a0).unwrap()
}

/// Gate for using `e^{−u}(1 + u + u²/3)` anywhere else.
#[test]
fn sigma_closed_form_matches_3d_integration() {
    let m = model(10.0);
    for u in [0.0, 1.0, 2.0] {
        let direct = m.sigma_overlap_quadrature(u, Tolerance::new(1e-12, 1e-10)).unwrap();
        let closed = m.sigma_overlap(u).unwrap();
        assert!((direct.value - closed).abs() < 1e-6, "u = {u}: direct {} vs closed {closed}", direct.value);
    }
    let at_bohr = m.sigma_overlap(1.0).unwrap();
    assert!((at_bohr - (-1.0f64).exp() * (7.0 / 3.0)).abs() < 1e-15);
    assert!((at_bohr - 0.858_385_4).abs() < 1e-7);
}

#[test]
fn sigma_is_one_at_origin_and_decreasing() {
    let m = model(10.0);
    assert_eq!(m.sigma_overlap(0.0).unwrap(), 1.0);
    let values: Vec<f64> = (0..400).map(|i| m.sigma_overlap(i as f64 * 0.1).unwrap()).collect();
    assert!(values.windows(2).all(|w| w[1] < w[0]));
    assert!(values[399] < 1e-14);
}

#[test]
fn scales_with_bohr_radius() {
    let m = HydrogenTrapModel::new(2.0, 20.0).unwrap();
    assert!((m.sigma_overlap(2.0).unwrap() - model(10.0).sigma_overlap(1.0).unwrap()).abs() < 1e-15);
    assert!((m.purity_closed() - model(10.0).purity_closed()).abs() < 1e-18);
    let s = m.sigma_square_integral(Tolerance::new(0.0, 1e-13)).unwrap();
    assert!((s.value / 8.0 - 33.0 * PI / 2.0).abs() < 1e-8 * 33.0 * PI / 2.0);
}

#[test]
fn sigma_square_integral_is_33_pi_over_2() {
    let s = model(10.0).sigma_square_integral(Tolerance::new(0.0, 1e-13)).unwrap();
    let expected = 33.0 * PI / 2.0;
    assert!((s.value - expected).abs() < 1e-8 * expected, "{} vs {expected}", s.value);
    assert!((s.value - 51.8363).abs() < 1e-4);
    // the same integral with σ taken from the 3-D quadrature at a few nodes is
    // too slow for a test; instead integrate the expanded polynomial termwise:
    // σ² u² = e^{−2u}(u² + 2u³ + 5u⁴/3 + 2u⁵/3 + u⁶/9), ∫ uⁿ e^{−2u} = n!/2^{n+1}
    let termwise = 2.0 / 8.0 + 2.0 * 6.0 / 16.0 + 5.0 / 3.0 * 24.0 / 32.0 + 2.0 / 3.0 * 120.0 / 64.0 + 720.0 / 128.0 / 9.0;
    assert!((4.0 * PI * termwise - expected).abs() < 1e-12);
}

#[test]
fn trap_quartic_integral_matches_radial_quadrature() {
    for b in [1.0, 2.0, 10.0] {
        let m = model(b);
        let radial = m.trap_quartic_integral_radial(Tolerance::new(0.0, 1e-13)).unwrap();
        let analytic = m.trap_quartic_integral();
        assert!((radial.value - analytic).abs() < 1e-10 * analytic, "b = {b}");
    }
    let analytic = model(2.0).trap_quartic_integral();
    assert!((analytic - 1.0 / ((2.0 * PI).powf(1.5) * 8.0)).abs() < 1e-18);
    assert!((analytic - 7.936_704_5e-3).abs() < 1e-10);
}

#[test]
fn quadrature_purity_matches_closed_form() {
    for b in [5.0, 10.0, 20.0, 50.0] {
        let m = model(b);
        let quad = m.purity_quadrature().unwrap();
        let closed = m.purity_closed();
        assert!((quad - closed).abs() <= 1e-8 * closed, "b/a0 = {b}: {quad} vs {closed}");
    }
    assert!((model(10.0).purity_closed() - 3.2913e-3).abs() < 1e-7);
    assert!((purity_prefactor() - 3.2913).abs() < 1e-4);
}

#[test]
fn radial_gaussian_normalization() {
    // the trap state itself is normalized: 4π ∫ |ψ|² R² dR = 1
    let b: f64 = 3.0;
    let norm2 = 1.0 / (PI.powf(1.5) * b.powi(3));
    let r = integrate_to_infinity(|r: f64| 4.0 * PI * r * r * norm2 * (-r * r / (b * b)).exp(), 0.0, Tolerance::default())
        .unwrap();
    assert!((r.value - 1.0).abs() < 1e-12);
}
