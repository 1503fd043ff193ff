use std::f64::consts::PI;

use zqlab::error::Error;
use zqlab::quad::*;
use zqlab::specfun::{bessel_j, gamma};
use zqlab::zeta::zeta;
use zqlab::Complex64;

#[test]
fn adaptive_basics() {
    let r = integrate_adaptive(|x| x, 0.0, 1.0, 1e-12).unwrap();
    assert!((r.value.re - 0.5).abs() < 1e-14);
    assert!(r.error_estimate >= 0.0 && r.evaluations > 0);
    let r = integrate_adaptive(|x: f64| x.powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
    assert!((r.value.re - 2.0).abs() < 1e-10);
}

#[test]
fn adaptive_bessel_closed_form() {
    // ∫₀^y x^{−1/2}(y−x)^{1/2} sin(πnx/2) dx = (πy/2)(J₀(w)sin w − J₁(w)cos w), w = πny/4
    let (y, n) = (2.0, 3.0);
    let f = |x: f64| x.powf(-0.5) * (y - x).sqrt() * (PI * n * x / 2.0).sin();
    let r = integrate_adaptive(f, 0.0, y, 1e-13).unwrap();
    let w = PI * n * y / 4.0;
    let closed =
        PI * y / 2.0 * (bessel_j(0.0, w).unwrap() * w.sin() - bessel_j(1.0, w).unwrap() * w.cos());
    assert!(
        (r.value.re - closed).abs() < 1e-9,
        "{} vs {closed}",
        r.value.re
    );
}

#[test]
fn adaptive_subdivision_limit() {
    let r = integrate_adaptive(|x: f64| (1.0 / x).sin() / x, 1e-9, 1.0, 1e-15);
    assert!(matches!(r, Err(Error::MaxSubdivisions { .. })));
}

#[test]
fn halving_tolerance_stays_within_previous_error() {
    let corpus: Vec<(Box<dyn Fn(f64) -> f64>, f64, f64)> = vec![
        (Box::new(|x: f64| (x * 10.0).sin() * (-x).exp()), 0.0, 3.0),
        (
            Box::new(|x: f64| x.powf(-0.3) * (1.0 - x).powf(0.2)),
            0.0,
            1.0,
        ),
        (Box::new(|x: f64| 1.0 / (1.0 + 25.0 * x * x)), -1.0, 1.0),
        (Box::new(|x: f64| x.ln().abs()), 0.0, 2.0),
    ];
    for (f, a, b) in &corpus {
        let mut tol = 1e-6;
        let mut prev = integrate_adaptive(f, *a, *b, tol).unwrap();
        for _ in 0..6 {
            tol /= 2.0;
            let cur = integrate_adaptive(f, *a, *b, tol).unwrap();
            assert!((cur.value.re - prev.value.re).abs() <= prev.error_estimate.max(1e-15));
            prev = cur;
        }
    }
}

#[test]
fn semi_infinite_examples() {
    let r = integrate_semi_infinite(|x: f64| (-x).exp(), 0.0, 1e-13).unwrap();
    assert!((r.value.re - 1.0).abs() < 1e-12);
    // ∫₀^∞ x^{−1/2}e^{−xy}sin(πnx/2 + π/4)dx = Im[e^{iπ/4}√π(y − iπn/2)^{−1/2}]
    let (y, n) = (1.0, 2.0);
    let c = PI * n / 2.0;
    let f = |x: f64| x.powf(-0.5) * (-x * y).exp() * (c * x + PI / 4.0).sin();
    let r = integrate_semi_infinite(f, 0.0, 1e-13).unwrap();
    let closed = (Complex64::from_polar(PI.sqrt(), PI / 4.0) * Complex64::new(y, -c).powf(-0.5)).im;
    assert!(
        (r.value.re - closed).abs() < 1e-9,
        "{} vs {closed}",
        r.value.re
    );
}

#[test]
fn semi_infinite_nonconvergent_tail() {
    let r = integrate_semi_infinite(|x: f64| 1.0 / (1.0 + x), 0.0, 1e-12);
    assert!(matches!(r, Err(Error::NonconvergentTail)));
}

#[test]
fn oscillatory_dirichlet_integral() {
    let f = |x: f64| if x == 0.0 { 1.0 } else { x.sin() / x };
    let r = integrate_oscillatory(f, 0.0, |k| (k + 1) as f64 * PI, 1e-12).unwrap();
    assert!((r.value.re - PI / 2.0).abs() < 1e-10);
}

#[test]
fn wynn_accelerates_alternating_harmonic() {
    let mut partial = Vec::new();
    let mut s = 0.0;
    for k in 1..=20 {
        s += if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64;
        partial.push(s);
    }
    let (v, _) = wynn_epsilon(&partial);
    assert!((v - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn vertical_line_examples() {
    // Mellin inversion of e^{−x} at x = 1
    let r = integrate_vertical_line(|s| gamma(s).unwrap(), 0.5, 60.0, 4000).unwrap();
    assert!((r.value.re - (-1f64).exp()).abs() < 1e-9);
    assert!(r.value.im.abs() < 1e-10);
    // x^{−s}/(2 sin(πs/2)) on Re s = 1 inverts to 1/(π(1 + x²))
    let x: f64 = 0.7;
    let lx = x.ln();
    let f = |s: Complex64| (-s * lx).exp() / (2.0 * (s * (PI / 2.0)).sin());
    let r = integrate_vertical_line(f, 1.0, 30.0, 4000).unwrap();
    assert!((r.value.re - 1.0 / (PI * (1.0 + x * x))).abs() < 1e-9);
}

#[test]
fn vertical_line_insufficient_decay() {
    let r = integrate_vertical_line(|s| 1.0 / (s * s + 1.0), 0.5, 60.0, 400);
    assert!(matches!(r, Err(Error::InsufficientDecay { .. })));
}

#[test]
fn laurent_simple_pole() {
    let s0 = Complex64::new(0.3, 0.1);
    let e = laurent_coefficients(|s| 1.0 / (s - s0), s0, 0.5, -2, 2).unwrap();
    for (k, v) in (-2..=2).zip(&e) {
        let want = if k == -1 { 1.0 } else { 0.0 };
        assert!((v - want).norm() < 1e-12, "e_{k} = {v}");
    }
}

#[test]
fn laurent_zeta_quartic_leading_term() {
    let f = |s: Complex64| zeta(s).unwrap().powi(4) / zeta(2.0 * s).unwrap();
    let one = Complex64::new(1.0, 0.0);
    let e1 = laurent_coefficients(f, one, 0.1, -4, -1).unwrap();
    let e2 = laurent_coefficients(f, one, 0.05, -4, -1).unwrap();
    assert!((e1[0].re - 6.0 / (PI * PI)).abs() < 1e-9);
    for (a, b) in e1.iter().zip(&e2) {
        assert!((a - b).norm() < 1e-9);
    }
}

#[test]
fn laurent_radius_hits_singularity() {
    let r = laurent_coefficients(|s| 1.0 / (s - 1.0), Complex64::new(0.0, 0.0), 1.0, -1, 0);
    assert!(matches!(r, Err(Error::RadiusHitsSingularity)));
}
